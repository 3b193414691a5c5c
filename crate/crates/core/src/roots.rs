//! Positive roots of type A, the order used to scan the diagram, and
//! regular ideals (root sets closed under partial addition).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

/// A positive root `(row, col)` with `row > col`, standing for the basis
/// element `y[row,col]` of the unitriangular Lie algebra.
///
/// `Ord` is the scan order: `a > b` exactly when `a` precedes `b` in the
/// sequence `(n,1), (n-1,1), ..., (2,1), (n,2), ..., (n,n-1)`. Sorting a
/// slice and reversing it therefore lists roots from the greatest down.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Root {
    pub row: usize,
    pub col: usize,
}

impl Root {
    /// Panics unless `row > col >= 1`.
    pub fn new(row: usize, col: usize) -> Self {
        assert!(
            col >= 1 && row > col,
            "({row},{col}) is not a positive root"
        );
        Root { row, col }
    }

    /// Validating constructor for roots of `n x n` matrices.
    pub fn checked(n: usize, row: usize, col: usize) -> Result<Self> {
        if col < 1 || row <= col || row > n {
            return Err(invalid(format!(
                "({row},{col}) is not a positive root for n = {n}"
            )));
        }
        Ok(Root { row, col })
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        self.col >= 1 && self.row > self.col && self.row <= n
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Compares two roots in the scan order; `Greater` means `a` comes first.
pub fn compare_prec(a: &Root, b: &Root) -> Ordering {
    b.col.cmp(&a.col).then(a.row.cmp(&b.row))
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_prec(self, other)
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(d)?;
        if col < 1 || row <= col {
            return Err(serde::de::Error::custom(format!(
                "[{row},{col}] is not a positive root"
            )));
        }
        Ok(Root { row, col })
    }
}

/// Partial addition: `(i,j) + (j,m) = (i,m)`, in either argument order.
pub fn root_sum(a: Root, b: Root) -> Option<Root> {
    if a.col == b.row {
        Some(Root::new(a.row, b.col))
    } else if b.col == a.row {
        Some(Root::new(b.row, a.col))
    } else {
        None
    }
}

/// All positive roots for `n`, from the greatest down.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for col in 1..n {
        for row in (col + 1..=n).rev() {
            out.push(Root::new(row, col));
        }
    }
    out
}

/// A set of positive roots of `n x n` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootSet {
    n: usize,
    members: BTreeSet<Root>,
}

impl RootSet {
    pub fn new(n: usize, roots: impl IntoIterator<Item = Root>) -> Result<Self> {
        let mut members = BTreeSet::new();
        for r in roots {
            if !r.is_valid_for(n) {
                return Err(invalid(format!("{r} is not a positive root for n = {n}")));
            }
            members.insert(r);
        }
        Ok(RootSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.members.contains(r)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in increasing scan order (the least root first).
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Root> + '_ {
        self.members.iter()
    }

    /// True when every sum with one summand in the set stays in the set.
    pub fn is_closed(&self) -> bool {
        self.first_closure_violation().is_none()
    }

    fn first_closure_violation(&self) -> Option<(Root, Root, Root)> {
        for &eta in &self.members {
            for other in positive_roots(self.n) {
                if let Some(sum) = root_sum(eta, other) {
                    if !self.members.contains(&sum) {
                        return Some((eta, other, sum));
                    }
                }
            }
        }
        None
    }
}

/// A root set `M` spanning an ideal of the unitriangular Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularIdeal {
    roots: RootSet,
}

impl RegularIdeal {
    /// The zero ideal.
    pub fn empty(n: usize) -> Self {
        RegularIdeal {
            roots: RootSet {
                n,
                members: BTreeSet::new(),
            },
        }
    }

    /// The whole algebra (the factor is zero).
    pub fn full(n: usize) -> Self {
        RegularIdeal {
            roots: RootSet {
                n,
                members: positive_roots(n).into_iter().collect(),
            },
        }
    }

    /// Accepts `roots` only if they are already closed.
    pub fn strict(roots: RootSet) -> Result<Self> {
        if let Some((eta, other, sum)) = roots.first_closure_violation() {
            return Err(invalid(format!(
                "root set is not closed: {eta} + {other} = {sum} is missing"
            )));
        }
        Ok(RegularIdeal { roots })
    }

    pub fn n(&self) -> usize {
        self.roots.n
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.roots.contains(r)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `dim L = |positive roots| - |M|`.
    pub fn factor_dim(&self) -> usize {
        let n = self.n();
        n * n.saturating_sub(1) / 2 - self.len()
    }

    /// Positive roots outside `M`, greatest first.
    pub fn free_roots(&self) -> Vec<Root> {
        positive_roots(self.n())
            .into_iter()
            .filter(|r| !self.contains(r))
            .collect()
    }

    /// Is `(row, col)` a zero of the characteristic pattern, i.e. on or above
    /// the diagonal, or inside `M`?
    pub fn is_zero_entry(&self, row: usize, col: usize) -> bool {
        row <= col || self.contains(&Root { row, col })
    }
}

/// Smallest regular ideal containing `generators`.
pub fn close_ideal(generators: &RootSet) -> RegularIdeal {
    let n = generators.n();
    let all = positive_roots(n);
    let mut members: BTreeSet<Root> = generators.members.clone();
    let mut work: Vec<Root> = members.iter().copied().collect();
    while let Some(eta) = work.pop() {
        for &other in &all {
            if let Some(sum) = root_sum(eta, other) {
                if members.insert(sum) {
                    work.push(sum);
                }
            }
        }
    }
    RegularIdeal {
        roots: RootSet { n, members },
    }
}

/// Builds an ideal from raw `[row, col]` pairs, closing them unless `strict`.
pub fn ideal_from_pairs(n: usize, pairs: &[(usize, usize)], strict: bool) -> Result<RegularIdeal> {
    if n == 0 {
        return Err(invalid("matrix size must be at least 1"));
    }
    let roots = pairs
        .iter()
        .map(|&(r, c)| Root::checked(n, r, c))
        .collect::<Result<Vec<_>>>()?;
    let set = RootSet::new(n, roots)?;
    if strict {
        RegularIdeal::strict(set)
    } else {
        Ok(close_ideal(&set))
    }
}

/// Every regular ideal for `n`, smallest first.
///
/// An ideal is an upper set of the root poset, so it is fixed by thresholds
/// `j <= a_1 <= a_2 <= ... <= a_{n-1} <= n` with column `j` of `M` equal to
/// the rows below `a_j`.
pub fn all_ideals(n: usize) -> Vec<RegularIdeal> {
    fn rec(n: usize, j: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == n {
            out.push(cur.clone());
            return;
        }
        for a in lo.max(j)..=n {
            cur.push(a);
            rec(n, j + 1, a, cur, out);
            cur.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut thresholds = Vec::new();
    rec(n, 1, 1, &mut Vec::new(), &mut thresholds);
    let mut out: Vec<RegularIdeal> = thresholds
        .into_iter()
        .map(|th| {
            let members = th
                .iter()
                .enumerate()
                .flat_map(|(idx, &a)| (a + 1..=n).map(move |i| Root::new(i, idx + 1)))
                .collect();
            RegularIdeal {
                roots: RootSet { n, members },
            }
        })
        .collect();
    out.sort_by_key(|m| m.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, pairs: &[(usize, usize)]) -> RootSet {
        RootSet::new(n, pairs.iter().map(|&(r, c)| Root::new(r, c))).unwrap()
    }

    fn pairs(ideal: &RegularIdeal) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = ideal.roots().iter().map(|r| (r.row, r.col)).collect();
        v.sort();
        v
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            compare_prec(&Root::new(7, 1), &Root::new(6, 1)),
            Ordering::Greater
        );
        assert_eq!(
            compare_prec(&Root::new(2, 1), &Root::new(7, 2)),
            Ordering::Greater
        );
        assert_eq!(
            compare_prec(&Root::new(5, 3), &Root::new(5, 3)),
            Ordering::Equal
        );
    }

    #[test]
    fn positive_roots_are_decreasing() {
        let roots = positive_roots(6);
        assert_eq!(roots.len(), 15);
        assert!(roots.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(roots[0], Root::new(6, 1));
        assert_eq!(*roots.last().unwrap(), Root::new(6, 5));
    }

    #[test]
    fn sums() {
        assert_eq!(
            root_sum(Root::new(7, 6), Root::new(6, 2)),
            Some(Root::new(7, 2))
        );
        assert_eq!(
            root_sum(Root::new(6, 2), Root::new(7, 6)),
            Some(Root::new(7, 2))
        );
        assert_eq!(root_sum(Root::new(4, 1), Root::new(3, 2)), None);
    }

    #[test]
    fn closure_examples() {
        let m = close_ideal(&set(7, &[(5, 1), (7, 2)]));
        assert_eq!(pairs(&m), vec![(5, 1), (6, 1), (7, 1), (7, 2)]);
        assert!(close_ideal(&set(4, &[])).is_empty());
        let m = close_ideal(&set(4, &[(2, 1)]));
        assert_eq!(pairs(&m), vec![(2, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn invalid_roots_rejected() {
        assert!(Root::checked(4, 2, 2).is_err());
        assert!(Root::checked(4, 5, 1).is_err());
        assert!(Root::checked(4, 2, 3).is_err());
        assert!(ideal_from_pairs(4, &[(3, 3)], false).is_err());
        assert!(ideal_from_pairs(0, &[], false).is_err());
    }

    #[test]
    fn strict_mode_rejects_generators() {
        assert!(ideal_from_pairs(7, &[(5, 1), (7, 2)], true).is_err());
        let ok = ideal_from_pairs(7, &[(5, 1), (6, 1), (7, 1), (7, 2)], true).unwrap();
        assert_eq!(ok.len(), 4);
    }

    #[test]
    fn ideal_counts_are_catalan() {
        let counts: Vec<usize> = (1..=6).map(|n| all_ideals(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        for m in all_ideals(5) {
            assert!(m.roots().is_closed());
        }
    }

    #[test]
    fn serde_round_trip() {
        let r = Root::new(7, 4);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "[7,4]");
        assert_eq!(serde_json::from_str::<Root>(&s).unwrap(), r);
        assert!(serde_json::from_str::<Root>("[3,4]").is_err());
    }
}
