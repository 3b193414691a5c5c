//! Permutations attached to a regular factor: the greedy permutation `w`,
//! reflection products over cross cells, inversion counts, and the chain and
//! segment data that predict the degree of a case-2 minor.
//!
//! Products of reflections are written greatest root first and applied
//! rightmost first, so `r_a r_b (x) = r_a(r_b(x))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, invariant, Result};
use crate::roots::{RegularIdeal, Root};

/// A bijection of `{1..n}`, stored as its one-line image array.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `i <-> j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn reflection(n: usize, r: Root) -> Self {
        Self::transposition(n, r.row, r.col)
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(invalid(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    /// `self * other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Image of a root: `w(i,j) = (w(i), w(j))`.
    pub fn act_root(&self, r: Root) -> (usize, usize) {
        (self.apply(r.row), self.apply(r.col))
    }

    /// Whether `w(r)` is a positive root.
    pub fn maps_positive(&self, r: Root) -> bool {
        let (a, b) = self.act_root(r);
        a > b
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = crate::error::Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Number of pairs `i < j` with `w(i) > w(j)`.
pub fn inversions(w: &Permutation) -> usize {
    let im = w.images();
    let mut count = 0;
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            if im[i] > im[j] {
                count += 1;
            }
        }
    }
    count
}

/// `w(t)` is the largest unused `i` with `(i,t)` outside `M`.
pub fn build_w(ideal: &RegularIdeal) -> Permutation {
    let n = ideal.n();
    let mut used = vec![false; n + 1];
    let mut images = Vec::with_capacity(n);
    for t in 1..=n {
        let pick = (1..=n)
            .rev()
            .find(|&i| !used[i] && (i <= t || !ideal.contains(&Root::new(i, t))))
            .expect("column t always has an eligible row");
        used[pick] = true;
        images.push(pick);
    }
    Permutation { images }
}

fn product_unchecked<'a>(
    n: usize,
    roots: impl DoubleEndedIterator<Item = &'a Root>,
) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    // Left factors act last: post-compose each reflection from the right end.
    for r in roots.rev() {
        for x in images.iter_mut() {
            if *x == r.row {
                *x = r.col;
            } else if *x == r.col {
                *x = r.row;
            }
        }
    }
    Permutation { images }
}

/// `r_{roots[0]} r_{roots[1]} ...` for a strictly decreasing root list.
pub fn reflection_product(n: usize, roots: &[Root]) -> Result<Permutation> {
    if let Some(w) = roots.windows(2).find(|w| w[0] <= w[1]) {
        return Err(invalid(format!(
            "reflection factors must be strictly decreasing, got {} before {}",
            w[0], w[1]
        )));
    }
    if let Some(r) = roots.iter().find(|r| !r.is_valid_for(n)) {
        return Err(invalid(format!("{r} is not a positive root for n = {n}")));
    }
    Ok(product_unchecked(n, roots.iter()))
}

/// `w^(t)`: product over the crosses of column `t`.
pub fn column(n: usize, crosses: &[Root], t: usize) -> Permutation {
    let in_col: Vec<Root> = crosses.iter().copied().filter(|r| r.col == t).collect();
    product_unchecked(n, in_col.iter())
}

/// `w^[t]`: product over the crosses of columns `1..=t`.
pub fn upto_column(n: usize, crosses: &[Root], t: usize) -> Permutation {
    let sub: Vec<Root> = crosses.iter().copied().filter(|r| r.col <= t).collect();
    product_unchecked(n, sub.iter())
}

/// `w_xi`: product over the crosses `xi' >= xi`.
pub fn at_cross(n: usize, crosses: &[Root], xi: Root) -> Result<Permutation> {
    let pos = crosses
        .iter()
        .position(|r| *r == xi)
        .ok_or_else(|| invalid(format!("{xi} is not a cross cell")))?;
    Ok(product_unchecked(n, crosses[..=pos].iter()))
}

/// Selector for the reflection-product family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WKind {
    Column(usize),
    UpTo(usize),
    At(Root),
}

pub fn w_family(n: usize, crosses: &[Root], kind: WKind) -> Result<Permutation> {
    match kind {
        WKind::Column(t) => Ok(column(n, crosses, t)),
        WKind::UpTo(t) => Ok(upto_column(n, crosses, t)),
        WKind::At(xi) => at_cross(n, crosses, xi),
    }
}

/// `h = w_xi(t)` together with the columns `J = {j <= t : w_xi(j) >= h}`.
#[derive(Clone, Debug)]
pub(crate) struct CrossFrame {
    pub xi: Root,
    pub w_xi: Permutation,
    pub h: usize,
    pub cols: Vec<usize>,
}

impl CrossFrame {
    pub fn new(n: usize, crosses: &[Root], xi: Root) -> Result<Self> {
        let w_xi = at_cross(n, crosses, xi)?;
        let t = xi.col;
        let h = w_xi.apply(t);
        if h == t {
            return Err(invariant(format!("w_xi(t) = t for xi = {xi}")));
        }
        let cols = (1..=t).filter(|&j| w_xi.apply(j) >= h).collect();
        Ok(CrossFrame { xi, w_xi, h, cols })
    }

    pub fn is_case_two(&self) -> bool {
        self.h < self.xi.col
    }

    /// Rows `t < i <= n` with `w_xi(i) < h`.
    pub fn starred_rows(&self) -> Vec<usize> {
        let n = self.w_xi.n();
        (self.xi.col + 1..=n)
            .filter(|&i| self.w_xi.apply(i) < self.h)
            .collect()
    }
}

/// Column reflection products `w^(1), ..., w^(n)` and `w_xi^(t)`, cached for
/// chain walking.
struct ChainWalker {
    t: usize,
    columns: Vec<Permutation>,
    head: Permutation,
}

impl ChainWalker {
    fn new(n: usize, crosses: &[Root], xi: Root) -> Self {
        let t = xi.col;
        let columns = (0..=n).map(|c| column(n, crosses, c)).collect();
        let head_roots: Vec<Root> = crosses
            .iter()
            .copied()
            .filter(|r| r.col == t && *r >= xi)
            .collect();
        let head = product_unchecked(n, head_roots.iter());
        ChainWalker { t, columns, head }
    }

    /// The first value below `i` met by the column walk, if any.
    fn descent(&self, i: usize) -> Option<usize> {
        let mut v = i;
        let top = if i > self.t {
            v = self.head.apply(v);
            if v < i {
                return Some(v);
            }
            self.t
        } else {
            i
        };
        for c in (1..top).rev() {
            v = self.columns[c].apply(v);
            if v < i {
                return Some(v);
            }
        }
        None
    }
}

fn case_two_frame(n: usize, crosses: &[Root], xi: Root) -> Result<CrossFrame> {
    let frame = CrossFrame::new(n, crosses, xi)?;
    if !frame.is_case_two() {
        return Err(invalid(format!(
            "{xi} has w_xi(t) = {} > t; chains exist only when w_xi(t) < t",
            frame.h
        )));
    }
    Ok(frame)
}

fn walk_chain(walker: &ChainWalker, start: usize, low: usize, high: usize) -> Result<Vec<usize>> {
    let mut chain = vec![start];
    let mut cur = start;
    while !(low..high).contains(&cur) {
        let next = walker
            .descent(cur)
            .ok_or_else(|| invalid(format!("{cur} has no descent, so it starts no chain")))?;
        if next < low {
            return Err(invariant(format!(
                "chain from {start} fell below the segment [{low},{high})"
            )));
        }
        chain.push(next);
        cur = next;
    }
    Ok(chain)
}

/// The descending chain `i > i' > i'' > ...` ending in `[c, h)`.
pub fn chain_of(n: usize, i: usize, xi: Root, crosses: &[Root]) -> Result<Vec<usize>> {
    if i == 0 || i > n {
        return Err(invalid(format!("row {i} out of range 1..={n}")));
    }
    let frame = case_two_frame(n, crosses, xi)?;
    let c = *frame
        .cols
        .first()
        .ok_or_else(|| invariant("empty column set"))?;
    let walker = ChainWalker::new(n, crosses, xi);
    walk_chain(&walker, i, c, frame.h)
}

/// Segment data of a case-2 cross: `E = [h, a_t]` split into the chain-covered
/// part `F` and the rest `D`, with `d_star` the size of the leading `D`
/// segments that fit inside the columns `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FDData {
    pub xi: Root,
    pub h: usize,
    /// Endpoints of `E`.
    pub e: (usize, usize),
    pub f: Vec<usize>,
    pub d: Vec<usize>,
    pub d_segments: Vec<Vec<usize>>,
    pub f_segments: Vec<Vec<usize>>,
    pub chains: Vec<Vec<usize>>,
    pub nu: usize,
    pub d_star: usize,
}

pub fn fd_data(ideal: &RegularIdeal, crosses: &[Root], xi: Root, cols: &[usize]) -> Result<FDData> {
    let n = ideal.n();
    let frame = case_two_frame(n, crosses, xi)?;
    let t = xi.col;
    let h = frame.h;
    let c = *frame
        .cols
        .first()
        .ok_or_else(|| invariant("empty column set"))?;
    let a_t = (t + 1..=n)
        .rev()
        .find(|&i| !ideal.contains(&Root::new(i, t)))
        .unwrap_or(t);

    let walker = ChainWalker::new(n, crosses, xi);
    let starred = frame.starred_rows();
    let mut covered = BTreeSet::new();
    let mut chains = Vec::with_capacity(starred.len());
    for &i in &starred {
        let chain = walk_chain(&walker, i, c, h)?;
        covered.extend(chain.iter().copied());
        chains.push(chain);
    }

    let mut f = Vec::new();
    let mut d = Vec::new();
    let mut d_segments: Vec<Vec<usize>> = Vec::new();
    let mut f_segments: Vec<Vec<usize>> = Vec::new();
    let mut last_in_f: Option<bool> = None;
    for a in h..=a_t {
        let in_f = covered.contains(&a);
        let segs = if in_f {
            &mut f_segments
        } else {
            &mut d_segments
        };
        if last_in_f == Some(in_f) {
            segs.last_mut().expect("open segment").push(a);
        } else {
            segs.push(vec![a]);
        }
        last_in_f = Some(in_f);
        if in_f {
            f.push(a);
        } else {
            d.push(a);
        }
    }

    let col_set: BTreeSet<usize> = cols.iter().copied().collect();
    let nu = d_segments
        .iter()
        .take_while(|seg| seg.iter().all(|x| col_set.contains(x)))
        .count();
    let d_star = d_segments[..nu].iter().map(Vec::len).sum();

    let data = FDData {
        xi,
        h,
        e: (h, a_t),
        f,
        d,
        d_segments,
        f_segments,
        chains,
        nu,
        d_star,
    };
    data.check(t, &starred)?;
    Ok(data)
}

impl FDData {
    fn check(&self, t: usize, starred: &[usize]) -> Result<()> {
        let xi = self.xi;
        if !self.d.contains(&self.h) {
            return Err(invariant(format!("{xi}: h = {} is not in D", self.h)));
        }
        if !self.f.contains(&t) {
            return Err(invariant(format!("{xi}: t = {t} is not in F")));
        }
        if let Some(i) = starred.iter().find(|i| !self.f.contains(i)) {
            return Err(invariant(format!("{xi}: starred row {i} is not in F")));
        }
        let alternating = self.d_segments.len() == self.f_segments.len()
            && self
                .d_segments
                .iter()
                .zip(&self.f_segments)
                .all(|(ds, fs)| ds.last() < fs.first());
        if !alternating {
            return Err(invariant(format!(
                "{xi}: segments do not alternate D1 < F1 < ... < Dl < Fl"
            )));
        }
        let mut seen = BTreeSet::new();
        for chain in &self.chains {
            for &x in chain {
                if !seen.insert(x) {
                    return Err(invariant(format!("{xi}: chains meet at {x}")));
                }
            }
        }
        Ok(())
    }
}
