//! Minors of the characteristic matrix `Phi_L - lambda E`.
//!
//! `Phi_L` carries `y[i,j]` below the diagonal outside `M` and zero
//! elsewhere. Minors are expanded exactly as polynomials in `lambda`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{LambdaPolynomial, Monomial, Polynomial};
use crate::roots::{RegularIdeal, Root};

/// One entry of `Phi_L - lambda E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Var(Root),
    MinusLambda,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix {
    ideal: RegularIdeal,
}

pub fn build_phi(ideal: &RegularIdeal) -> CharMatrix {
    CharMatrix {
        ideal: ideal.clone(),
    }
}

impl CharMatrix {
    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn ideal(&self) -> &RegularIdeal {
        &self.ideal
    }

    /// Entry of `Phi_L - lambda E` at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Entry {
        if i == j {
            Entry::MinusLambda
        } else if self.ideal.is_zero_entry(i, j) {
            Entry::Zero
        } else {
            Entry::Var(Root::new(i, j))
        }
    }

    /// `Phi_L` alone (no `lambda`), as text rows of `0` and `y[i,j]`.
    pub fn render(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        for i in 1..=n {
            let row: Vec<String> = (1..=n)
                .map(|j| match self.entry(i, j) {
                    Entry::Var(r) => format!("y[{},{}]", r.row, r.col),
                    _ => "0".to_string(),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Row set `I` and column set `J` of a minor, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(invalid(format!(
                "minor needs |I| = |J|, got {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        for (name, v) in [("rows", &rows), ("columns", &cols)] {
            if v.iter().any(|&x| x < 1 || x > n) {
                return Err(invalid(format!("{name} {v:?} leave the range 1..={n}")));
            }
            if v.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("{name} {v:?} are not strictly increasing")));
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Number of shared indices, an upper bound for the `lambda`-degree.
    pub fn overlap(&self) -> usize {
        self.rows.iter().filter(|r| self.cols.contains(r)).count()
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {:?} cols {:?}", self.rows, self.cols)
    }
}

/// Determinant of the `I x J` submatrix of `Phi_L - lambda E`, by expansion
/// over column subsets (rows taken in order).
pub fn minor_lambda(m: &CharMatrix, spec: &MinorSpec) -> Result<LambdaPolynomial> {
    if spec.rows.len() != spec.cols.len() {
        return Err(invalid("minor needs |I| = |J|"));
    }
    let size = spec.size();
    if size == 0 {
        return Ok(LambdaPolynomial::constant(Polynomial::one()));
    }
    let full = 1usize << size;
    let mut dp: Vec<LambdaPolynomial> = vec![LambdaPolynomial::zero(); full];
    dp[0] = LambdaPolynomial::constant(Polynomial::one());
    for mask in 0..full {
        let r = mask.count_ones() as usize;
        if r == size || dp[mask].is_zero() {
            continue;
        }
        let row = spec.rows[r];
        let cur = std::mem::take(&mut dp[mask]);
        for (c, &col) in spec.cols.iter().enumerate() {
            if mask & (1 << c) != 0 {
                continue;
            }
            let term = match m.entry(row, col) {
                Entry::Zero => continue,
                Entry::Var(v) => cur.mul_monomial(&Monomial::var(v)),
                Entry::MinusLambda => cur.mul_minus_lambda(),
            };
            // Columns already used to the right of `c` each add an inversion.
            let higher = (mask >> (c + 1)).count_ones();
            let term = if higher % 2 == 1 { term.negate() } else { term };
            dp[mask | (1 << c)].add_assign(&term);
        }
        dp[mask] = cur;
    }
    Ok(std::mem::take(&mut dp[full - 1]))
}

/// Minor of `Phi_L` itself (the `lambda^0` coefficient).
pub fn phi_minor(m: &CharMatrix, spec: &MinorSpec) -> Result<Polynomial> {
    Ok(minor_lambda(m, spec)?.coeff(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// Row `i` moves to `i + 1`.
    Down,
    /// Column `i + 1` moves to `i`.
    Left,
}

/// The shifted spec, or `None` when the shifted minor is zero by definition.
pub fn shift_minor(spec: &MinorSpec, i: usize, dir: Shift) -> Option<MinorSpec> {
    let replace = |v: &[usize], from: usize, to: usize| -> Option<Vec<usize>> {
        if v.contains(&from) && !v.contains(&to) {
            let mut out: Vec<usize> = v.iter().map(|&x| if x == from { to } else { x }).collect();
            out.sort_unstable();
            Some(out)
        } else {
            None
        }
    };
    match dir {
        Shift::Down => replace(&spec.rows, i, i + 1).map(|rows| MinorSpec {
            rows,
            cols: spec.cols.clone(),
        }),
        Shift::Left => replace(&spec.cols, i + 1, i).map(|cols| MinorSpec {
            rows: spec.rows.clone(),
            cols,
        }),
    }
}

/// Memoizes `lambda`-degrees of minors of one matrix.
pub struct DegreeCache<'a> {
    m: &'a CharMatrix,
    cache: HashMap<MinorSpec, Option<usize>>,
}

impl<'a> DegreeCache<'a> {
    pub fn new(m: &'a CharMatrix) -> Self {
        DegreeCache {
            m,
            cache: HashMap::new(),
        }
    }

    pub fn degree(&mut self, spec: &MinorSpec) -> Result<Option<usize>> {
        if let Some(d) = self.cache.get(spec) {
            return Ok(*d);
        }
        let d = minor_lambda(self.m, spec)?.degree();
        self.cache.insert(spec.clone(), d);
        Ok(d)
    }

    /// Extremality given the minor's own degree `d`.
    fn extremal_with(&mut self, spec: &MinorSpec, d: usize) -> Result<bool> {
        let n = self.m.n();
        for i in 1..n {
            for dir in [Shift::Down, Shift::Left] {
                if let Some(s) = shift_minor(spec, i, dir) {
                    if matches!(self.degree(&s)?, Some(ds) if ds >= d) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_extremal(&mut self, spec: &MinorSpec) -> Result<bool> {
        let d = self
            .degree(spec)?
            .ok_or_else(|| invalid(format!("minor {spec} is zero; extremality is undefined")))?;
        self.extremal_with(spec, d)
    }
}

/// True iff every one-step row-down and column-left shift strictly lowers
/// the `lambda`-degree (vanishing shifts count as lower).
pub fn is_extremal(m: &CharMatrix, spec: &MinorSpec) -> Result<bool> {
    DegreeCache::new(m).is_extremal(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub degree: usize,
    pub extremal: bool,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// All extremal minors with at most `max_size` rows whose highest
/// coefficient is non-constant, ordered by size, then rows, then columns.
/// Minors with a constant top coefficient (e.g. a lone `-lambda`) carry no
/// invariant and are skipped. Errors before doing any work if the number of
/// candidate specs exceeds `budget`.
pub fn enumerate_extremal(
    ideal: &RegularIdeal,
    max_size: usize,
    budget: u128,
) -> Result<Vec<ExtremalEntry>> {
    let n = ideal.n();
    let max_size = max_size.min(n);
    let needed: u128 = (1..=max_size).map(|k| binomial(n, k).pow(2)).sum();
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let m = build_phi(ideal);
    let mut cache = DegreeCache::new(&m);
    let mut out = Vec::new();
    for k in 1..=max_size {
        let sets = subsets(n, k);
        for rows in &sets {
            for cols in &sets {
                let spec = MinorSpec {
                    rows: rows.clone(),
                    cols: cols.clone(),
                };
                let mn = minor_lambda(&m, &spec)?;
                let Some(d) = mn.degree() else {
                    cache.cache.insert(spec, None);
                    continue;
                };
                cache.cache.insert(spec.clone(), Some(d));
                if mn.leading().and_then(Polynomial::degree) == Some(0) {
                    continue;
                }
                if cache.extremal_with(&spec, d)? {
                    out.push(ExtremalEntry {
                        rows: spec.rows,
                        cols: spec.cols,
                        degree: d,
                        extremal: true,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::ideal_from_pairs;

    fn example1() -> CharMatrix {
        build_phi(&ideal_from_pairs(7, &[(5, 1), (7, 2)], false).unwrap())
    }

    fn spec(n: usize, rows: &[usize], cols: &[usize]) -> MinorSpec {
        MinorSpec::new(n, rows.to_vec(), cols.to_vec()).unwrap()
    }

    fn y(i: usize, j: usize) -> Polynomial {
        Polynomial::var(Root::new(i, j))
    }

    #[test]
    fn phi_pattern() {
        let m = example1();
        assert_eq!(m.entry(5, 1), Entry::Zero);
        assert_eq!(m.entry(7, 2), Entry::Zero);
        assert_eq!(m.entry(6, 2), Entry::Var(Root::new(6, 2)));
        assert_eq!(m.entry(3, 3), Entry::MinusLambda);
        assert_eq!(m.entry(2, 5), Entry::Zero);
        let small = build_phi(&RegularIdeal::empty(2));
        assert_eq!(small.render(), "0 0\ny[2,1] 0\n");
        let zero = build_phi(&RegularIdeal::full(3));
        assert_eq!(zero.render(), "0 0 0\n0 0 0\n0 0 0\n");
    }

    #[test]
    fn printed_xi4_minor() {
        let m = example1();
        let mn = minor_lambda(&m, &spec(7, &[2, 3, 4, 7], &[1, 2, 3, 4])).unwrap();
        assert_eq!(mn.degree(), Some(2));
        let top = &y(7, 4) * &y(4, 1) + &y(7, 3) * &y(3, 1);
        assert_eq!(mn.leading().unwrap().sign_normalized(), top);
        let mid = &(&y(7, 3) * &y(2, 1)) * &y(3, 2)
            + &(&y(7, 4) * &y(2, 1)) * &y(4, 2)
            + &(&y(7, 4) * &y(3, 1)) * &y(4, 3);
        let low = &(&(&y(7, 4) * &y(2, 1)) * &y(3, 2)) * &y(4, 3);
        // Leibniz sign: the lambda^2 coefficient is +top, so fix signs by it.
        let sign = if mn.coeff(2) == top { 1 } else { -1 };
        let adj = |p: Polynomial| if sign == 1 { p } else { -p };
        assert_eq!(mn.coeff(1).sign_normalized(), mid);
        assert_eq!(mn.coeff(0).sign_normalized(), low);
        assert_eq!(adj(mn.coeff(2)), top);
    }

    #[test]
    fn xi5_minor_is_constant() {
        let m = example1();
        let mn = minor_lambda(&m, &spec(7, &[5, 6, 7], &[2, 3, 4])).unwrap();
        assert_eq!(mn.degree(), Some(0));
        // Expand the printed 3x3 determinant by hand along the last row.
        let det = &y(7, 3)
            * &(&(&y(5, 2) * &y(6, 4)) - &(&y(5, 4) * &y(6, 2)))
            * Polynomial::constant(crate::poly::rat(-1))
            + &y(7, 4) * &(&(&y(5, 2) * &y(6, 3)) - &(&y(5, 3) * &y(6, 2)));
        assert_eq!(mn.coeff(0), det);
    }

    #[test]
    fn diagonal_cell() {
        let m = build_phi(&RegularIdeal::empty(4));
        let mn = minor_lambda(&m, &spec(4, &[2], &[2])).unwrap();
        assert_eq!(mn.degree(), Some(1));
        assert_eq!(mn.coeff(1), -&Polynomial::one());
    }

    #[test]
    fn spec_validation() {
        assert!(MinorSpec::new(4, vec![1, 2], vec![1]).is_err());
        assert!(MinorSpec::new(4, vec![2, 1], vec![1, 2]).is_err());
        assert!(MinorSpec::new(4, vec![5], vec![1]).is_err());
        assert!(MinorSpec::new(4, vec![0], vec![1]).is_err());
    }

    #[test]
    fn shifts() {
        let s = spec(7, &[3, 4, 6, 7], &[1, 2, 3, 4]);
        assert_eq!(
            shift_minor(&s, 4, Shift::Down),
            Some(spec(7, &[3, 5, 6, 7], &[1, 2, 3, 4]))
        );
        assert_eq!(shift_minor(&s, 3, Shift::Down), None);
        assert_eq!(shift_minor(&s, 1, Shift::Left), None);
        let t = spec(7, &[5], &[3]);
        assert_eq!(shift_minor(&t, 2, Shift::Left), Some(spec(7, &[5], &[2])));
    }

    #[test]
    fn extremality() {
        let m = example1();
        assert!(is_extremal(&m, &spec(7, &[5, 6, 7], &[2, 3, 4])).unwrap());
        let m3 = build_phi(&RegularIdeal::empty(3));
        assert!(!is_extremal(&m3, &spec(3, &[2], &[1])).unwrap());
        let m2 = build_phi(&RegularIdeal::empty(2));
        assert!(is_extremal(&m2, &spec(2, &[2], &[1])).unwrap());
        // zero minor
        assert!(is_extremal(&m3, &spec(3, &[1], &[2])).is_err());
    }

    #[test]
    fn enumeration() {
        let found = enumerate_extremal(&RegularIdeal::empty(4), 2, 1_000).unwrap();
        let specs: Vec<(Vec<usize>, Vec<usize>)> = found
            .iter()
            .map(|e| (e.rows.clone(), e.cols.clone()))
            .collect();
        assert!(specs.contains(&(vec![4], vec![1])));
        assert!(specs.contains(&(vec![3, 4], vec![1, 2])));

        let two = enumerate_extremal(&RegularIdeal::empty(2), 2, 1_000).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(
            (two[0].rows.clone(), two[0].cols.clone()),
            (vec![2], vec![1])
        );

        assert!(enumerate_extremal(&RegularIdeal::full(3), 3, 1_000)
            .unwrap()
            .is_empty());
        assert!(matches!(
            enumerate_extremal(&RegularIdeal::empty(6), 6, 10),
            Err(Error::Budget { .. })
        ));
    }
}
