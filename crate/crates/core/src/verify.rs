//! Exact verification: the coadjoint action, invariance trials, generic
//! rank of the skew form, Jacobian rank, and a brute-force oracle for
//! low-degree invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{build_diagram, sign_mismatches, Symbol};
use crate::error::{invalid, invariant, Error, Result};
use crate::invariants::{all_invariants, triangular_decomposition, Case, InvariantRecord};
use crate::linalg;
use crate::poly::{
    bracket_generators, evaluate, generator_bracket, jacobian_rank, poisson_bracket_generator, rat,
    Monomial, Point, Polynomial, Rational,
};
use crate::roots::{close_ideal, positive_roots, RegularIdeal, Root, RootSet};
use crate::weyl::{
    at_cross, build_w, chain_of, fd_data, inversions, reflection_product, upto_column, CrossFrame,
};

/// Entries of random samples are drawn from `-RANGE..=RANGE`.
pub const SAMPLE_RANGE: i64 = 9;

/// A linear form on the factor, stored as the strictly upper triangular
/// matrix `b` with `b[t][k] = f(y[k,t])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPoint {
    n: usize,
    values: Point,
}

impl DualPoint {
    /// Coordinates outside `values` are zero. Rejects nonzero values on `M`.
    pub fn new(ideal: &RegularIdeal, values: Point) -> Result<Self> {
        for (r, v) in &values {
            if !r.is_valid_for(ideal.n()) {
                return Err(invalid(format!(
                    "{r} is not a positive root for n = {}",
                    ideal.n()
                )));
            }
            if ideal.contains(r) && !v.is_zero() {
                return Err(invalid(format!(
                    "coordinate {r} lies in the ideal and must be zero"
                )));
            }
        }
        let mut full = Point::new();
        for r in ideal.free_roots() {
            full.insert(r, values.get(&r).cloned().unwrap_or_else(Rational::zero));
        }
        Ok(DualPoint {
            n: ideal.n(),
            values: full,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Values for every root outside `M`.
    pub fn coordinates(&self) -> &Point {
        &self.values
    }

    /// Values for every positive root, zero on `M`.
    pub fn full_point(&self) -> Point {
        let mut p: Point = positive_roots(self.n)
            .into_iter()
            .map(|r| (r, Rational::zero()))
            .collect();
        p.extend(self.values.iter().map(|(r, v)| (*r, v.clone())));
        p
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let mut b = vec![vec![Rational::zero(); self.n]; self.n];
        for (r, v) in &self.values {
            b[r.col - 1][r.row - 1] = v.clone();
        }
        b
    }

    pub fn get(&self, r: &Root) -> Rational {
        self.values.get(r).cloned().unwrap_or_else(Rational::zero)
    }
}

/// A lower unitriangular rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    m: Vec<Vec<Rational>>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            m: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn new(m: Vec<Vec<Rational>>) -> Result<Self> {
        let n = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(invalid("group element must be square"));
            }
            for (j, x) in row.iter().enumerate() {
                let ok = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => x.is_one(),
                    std::cmp::Ordering::Less => x.is_zero(),
                    std::cmp::Ordering::Greater => true,
                };
                if !ok {
                    return Err(invalid("group element must be lower unitriangular"));
                }
            }
        }
        Ok(GroupElement { m })
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.m
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            m: matmul(&self.m, &other.m),
        }
    }

    /// Exact inverse by forward substitution.
    pub fn inverse(&self) -> GroupElement {
        let n = self.n();
        let mut inv: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for (i, row) in self.m.iter().enumerate() {
            let next = (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => Rational::one(),
                    std::cmp::Ordering::Greater => Rational::zero(),
                    std::cmp::Ordering::Less => {
                        -(j..i).map(|k| &row[k] * &inv[k][j]).sum::<Rational>()
                    }
                })
                .collect();
            inv.push(next);
        }
        GroupElement { m: inv }
    }
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `Ad*_g b`: conjugate, then project onto the strictly upper part. The
/// result must again vanish on `M`.
pub fn coadjoint_act(ideal: &RegularIdeal, g: &GroupElement, b: &DualPoint) -> Result<DualPoint> {
    let n = ideal.n();
    if g.n() != n || b.n() != n {
        return Err(invalid(
            "size mismatch between group element, point and ideal",
        ));
    }
    let conj = matmul(&matmul(&g.m, &b.matrix()), &g.inverse().m);
    let mut values = Point::new();
    for r in positive_roots(n) {
        let v = conj[r.col - 1][r.row - 1].clone();
        if ideal.contains(&r) {
            if !v.is_zero() {
                return Err(invariant(format!(
                    "coadjoint image has nonzero coordinate {v} on {r}, which lies in the ideal"
                )));
            }
        } else {
            values.insert(r, v);
        }
    }
    Ok(DualPoint { n, values })
}

fn sample(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))
}

pub fn random_group_element(n: usize, rng: &mut ChaCha8Rng) -> GroupElement {
    let mut g = GroupElement::identity(n);
    for i in 0..n {
        for j in 0..i {
            g.m[i][j] = sample(rng);
        }
    }
    g
}

pub fn random_point(ideal: &RegularIdeal, rng: &mut ChaCha8Rng) -> DualPoint {
    let values = ideal
        .free_roots()
        .into_iter()
        .map(|r| (r, sample(rng)))
        .collect();
    DualPoint {
        n: ideal.n(),
        values,
    }
}

/// Distinct primes on the free coordinates, greatest root first.
pub fn prime_point(ideal: &RegularIdeal) -> DualPoint {
    let free = ideal.free_roots();
    let primes = primes(free.len());
    let values = free
        .into_iter()
        .zip(primes)
        .map(|(r, p)| (r, rat(p)))
        .collect();
    DualPoint {
        n: ideal.n(),
        values,
    }
}

fn primes(count: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2i64;
    while out.len() < count {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// A random regular ideal: up to three random generators, closed.
pub fn random_ideal(n: usize, rng: &mut ChaCha8Rng) -> RegularIdeal {
    let roots = positive_roots(n);
    if roots.is_empty() {
        return RegularIdeal::empty(n);
    }
    let k = rng.gen_range(0..=3usize);
    let gens: Vec<Root> = (0..k)
        .map(|_| roots[rng.gen_range(0..roots.len())])
        .collect();
    close_ideal(&RootSet::new(n, gens).expect("roots are valid"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub trials: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, trials: u64, seed: u64, failure: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if failure.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            trials,
            seed,
            witness: failure,
        }
    }

    fn skipped(name: &str, why: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: Status::Skipped,
            trials: 0,
            seed: 0,
            witness: Some(why),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed (skipped checks do not count as failures).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> + '_ {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

fn describe_trial(g: &GroupElement, b: &DualPoint) -> String {
    let g_rows: Vec<String> = g
        .matrix()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let b_vals: Vec<String> = b
        .coordinates()
        .iter()
        .map(|(r, v)| format!("y[{},{}]={v}", r.row, r.col))
        .collect();
    format!("g=[{}] f={{{}}}", g_rows.join("; "), b_vals.join(", "))
}

/// Bracket and orbit trials for labelled polynomials.
pub fn check_invariance_polys(
    polys: &[(String, Polynomial)],
    ideal: &RegularIdeal,
    trials: u64,
    seed: u64,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(GroupElement, DualPoint)> = (0..trials)
        .map(|_| {
            (
                random_group_element(ideal.n(), &mut rng),
                random_point(ideal, &mut rng),
            )
        })
        .collect();
    for (label, p) in polys {
        let bracket_failure = match bracket_generators(p, ideal) {
            Err(e) => Some(e.to_string()),
            Ok(brs) => brs
                .iter()
                .enumerate()
                .find(|(_, b)| !b.is_zero())
                .map(|(i, b)| format!("{{y[{},{}], P}} = {b}", i + 2, i + 1)),
        };
        report.checks.push(CheckResult::new(
            &format!("brackets {label}"),
            (ideal.n().saturating_sub(1)) as u64,
            seed,
            bracket_failure,
        ));

        let mut orbit_failure = None;
        for (g, b) in &samples {
            let outcome = coadjoint_act(ideal, g, b).and_then(|moved| {
                let before = evaluate(p, &b.full_point())?;
                let after = evaluate(p, &moved.full_point())?;
                Ok((before, after))
            });
            match outcome {
                Ok((before, after)) if before == after => {}
                Ok((before, after)) => {
                    orbit_failure = Some(format!(
                        "P(f) = {before}, P(Ad*_g f) = {after}; {}",
                        describe_trial(g, b)
                    ));
                    break;
                }
                Err(e) => {
                    orbit_failure = Some(format!("{e}; {}", describe_trial(g, b)));
                    break;
                }
            }
        }
        report.checks.push(CheckResult::new(
            &format!("orbit {label}"),
            trials,
            seed,
            orbit_failure,
        ));
    }
    report
}

/// Invariance of every record's `P`: generator brackets vanish and values
/// are constant on sampled coadjoint orbits.
pub fn check_invariance(
    records: &[InvariantRecord],
    ideal: &RegularIdeal,
    trials: u64,
    seed: u64,
) -> VerificationReport {
    let polys: Vec<(String, Polynomial)> = records
        .iter()
        .map(|r| (format!("P{}", r.xi), r.p.clone()))
        .collect();
    check_invariance_polys(&polys, ideal, trials, seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewStats {
    pub max_rank: usize,
    pub corank: usize,
    pub dim: usize,
}

/// The skew matrix `B(f)[eta][mu] = f([y_eta, y_mu] mod m)` on the free roots.
pub fn skew_matrix(ideal: &RegularIdeal, f: &DualPoint) -> Vec<Vec<Rational>> {
    let free = ideal.free_roots();
    free.iter()
        .map(|&a| {
            free.iter()
                .map(|&b| {
                    let br = generator_bracket(a, b).reduce_mod(ideal);
                    br.terms()
                        .map(|(m, c)| {
                            let v = m.variables().next().expect("brackets are linear");
                            c * f.get(&v)
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Maximum rank of `B(f)` over `trials` random points and the prime point.
pub fn skew_rank_stats(ideal: &RegularIdeal, trials: u64, seed: u64) -> SkewStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = ideal.factor_dim();
    let mut max_rank = linalg::rank(skew_matrix(ideal, &prime_point(ideal)));
    for _ in 0..trials {
        let f = random_point(ideal, &mut rng);
        max_rank = max_rank.max(linalg::rank(skew_matrix(ideal, &f)));
    }
    SkewStats {
        max_rank,
        corank: dim - max_rank,
        dim,
    }
}

type Weight = Vec<i64>;

fn weight_of(m: &Monomial, n: usize) -> Weight {
    let mut w = vec![0i64; n];
    for &(r, e) in m.factors() {
        w[r.row - 1] += e as i64;
        w[r.col - 1] -= e as i64;
    }
    w
}

fn monomials_of_degree(vars: &[Root], d: u32) -> Vec<Monomial> {
    fn rec(
        vars: &[Root],
        start: usize,
        left: u32,
        cur: &mut Vec<(Root, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if left == 0 {
            out.push(Monomial::from_factors(cur.iter().copied()));
            return;
        }
        for i in start..vars.len() {
            for e in (1..=left).rev() {
                cur.push((vars[i], e));
                rec(vars, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, 0, d, &mut Vec::new(), &mut out);
    out
}

fn count_monomials(vars: usize, max_degree: u32) -> u128 {
    // C(vars + d - 1, d) summed over d = 1..=max_degree
    (1..=max_degree as u128)
        .map(|d| {
            let top = vars as u128 + d - 1;
            (0..d).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
        })
        .sum()
}

/// A basis of the invariants of degree `1..=max_degree`: the joint kernel of
/// `P -> {y[i+1,i], P} mod m`, computed block by block over (degree, weight)
/// and returned in reduced echelon form.
pub fn oracle_invariants(
    ideal: &RegularIdeal,
    max_degree: u32,
    budget: u128,
) -> Result<Vec<Polynomial>> {
    let n = ideal.n();
    let free = ideal.free_roots();
    let needed = count_monomials(free.len(), max_degree);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let gens: Vec<usize> = (1..n)
        .filter(|&i| !ideal.contains(&Root::new(i + 1, i)))
        .collect();
    let mut basis = Vec::new();
    for d in 1..=max_degree {
        let mut blocks: BTreeMap<Weight, Vec<Monomial>> = BTreeMap::new();
        for m in monomials_of_degree(&free, d) {
            blocks.entry(weight_of(&m, n)).or_default().push(m);
        }
        for (_, mut cols) in blocks {
            cols.sort_by(|a, b| b.cmp(a));
            let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
            let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
            for (c, m) in cols.iter().enumerate() {
                let p = Polynomial::term(Rational::one(), m.clone());
                for &g in &gens {
                    let br = poisson_bracket_generator(g, &p, ideal)?;
                    for (tm, coef) in br.terms() {
                        let next = row_index.len();
                        let r = *row_index.entry((g, tm.clone())).or_insert(next);
                        entries.push((r, c, coef.clone()));
                    }
                }
            }
            let mut rows = vec![vec![Rational::zero(); cols.len()]; row_index.len()];
            for (r, c, v) in entries {
                rows[r][c] += v;
            }
            let mut ker = linalg::nullspace(rows, cols.len());
            if ker.is_empty() {
                continue;
            }
            linalg::rref(&mut ker, cols.len());
            for v in ker {
                let mut p = Polynomial::zero();
                for (coef, m) in v.into_iter().zip(&cols) {
                    p.add_term(m.clone(), coef);
                }
                if !p.is_zero() {
                    basis.push(p);
                }
            }
        }
    }
    Ok(basis)
}

/// Whether `p` is a linear combination of `basis` (exact solve).
pub fn in_span(basis: &[Polynomial], p: &Polynomial) -> bool {
    let monos: Vec<Monomial> = basis
        .iter()
        .chain(std::iter::once(p))
        .flat_map(|b| b.terms().map(|(m, _)| m.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let coords =
        |q: &Polynomial| -> Vec<Rational> { monos.iter().map(|m| q.coefficient(m)).collect() };
    let vectors: Vec<Vec<Rational>> = basis.iter().map(coords).collect();
    linalg::solve_in_span(&vectors, &coords(p)).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: u64,
    pub seed: u64,
    pub max_degree: u32,
    /// Largest number of monomials the oracle may enumerate.
    pub budget: u128,
    /// Random points for the skew-rank statistics.
    pub rank_samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 100,
            seed: 0,
            max_degree: 4,
            budget: 20_000,
            rank_samples: 20,
        }
    }
}

fn structural_checks(ideal: &RegularIdeal, seed: u64) -> VerificationReport {
    let n = ideal.n();
    let d = build_diagram(ideal);
    let s = d.crosses();
    let counts = d.counts();
    let mut report = VerificationReport::default();
    let mut push = |name: &str, failure: Option<String>| {
        report.checks.push(CheckResult::new(name, 1, seed, failure));
    };

    let mism = sign_mismatches(&d);
    push(
        "diagram.sign_classes",
        mism.first()
            .map(|(r, a, p)| format!("{r}: diagram has {a:?}, signs predict {p:?}")),
    );

    let total = n * n.saturating_sub(1) / 2;
    let plus = d.cells().filter(|(_, c)| c.symbol == Symbol::Plus).count();
    let minus = d.cells().filter(|(_, c)| c.symbol == Symbol::Minus).count();
    let counts_failure = if counts.crosses + counts.plus_minus + counts.bullets != total {
        Some(format!("{counts:?} does not cover {total} cells"))
    } else if plus != minus {
        Some(format!("{plus} plus vs {minus} minus"))
    } else if counts.bullets != ideal.len()
        || counts.crosses + counts.plus_minus != ideal.factor_dim()
    {
        Some(format!(
            "{counts:?} inconsistent with dim L = {}",
            ideal.factor_dim()
        ))
    } else {
        None
    };
    push("diagram.counts", counts_failure);

    let w = build_w(ideal);
    push(
        "weyl.reflection_product",
        match reflection_product(n, s) {
            Ok(p) if p == w => None,
            Ok(p) => Some(format!("greedy w = {w}, reflection product = {p}")),
            Err(e) => Some(e.to_string()),
        },
    );
    let len = inversions(&w);
    push(
        "weyl.length",
        (len != ideal.factor_dim())
            .then(|| format!("l(w) = {len}, dim L = {}", ideal.factor_dim())),
    );

    let mut cross_failure = None;
    for &xi in s {
        let wx = at_cross(n, s, xi).expect("xi is a cross");
        if wx.maps_positive(xi) {
            cross_failure = Some(format!("w_xi({xi}) is positive"));
            break;
        }
        if let Some(j) = (1..xi.col).find(|&j| wx.apply(j) != w.apply(j)) {
            cross_failure = Some(format!("w_xi({j}) != w({j}) for xi = {xi}"));
            break;
        }
    }
    push("weyl.cross_signs", cross_failure);

    let mut chain_failure = None;
    for &xi in s {
        let frame = match CrossFrame::new(n, s, xi) {
            Ok(f) => f,
            Err(e) => {
                chain_failure = Some(e.to_string());
                break;
            }
        };
        if !frame.is_case_two() {
            continue;
        }
        let c = frame.cols[0];
        let ends: Result<BTreeSet<usize>> = frame
            .starred_rows()
            .iter()
            .map(|&i| chain_of(n, i, xi, s).map(|ch| *ch.last().expect("chain is nonempty")))
            .collect();
        let data = fd_data(ideal, s, xi, &frame.cols);
        match (ends, data) {
            (Ok(ends), Ok(data)) => {
                let expected: BTreeSet<usize> = (c..frame.h).collect();
                if ends != expected || ends.len() != frame.starred_rows().len() {
                    chain_failure = Some(format!(
                        "{xi}: chain ends {ends:?} do not match [{c},{})",
                        frame.h
                    ));
                    break;
                }
                let direct = direct_f(n, s, xi, &frame, data.e.1);
                if direct != data.f {
                    chain_failure = Some(format!(
                        "{xi}: chains cover {:?}, direct test gives {direct:?}",
                        data.f
                    ));
                    break;
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                chain_failure = Some(format!("{xi}: {e}"));
                break;
            }
        }
    }
    push("weyl.chains", chain_failure);
    report
}

/// Rows `a` of `[h, a_t]` sent below `h` by `w_xi` (if `a > t`) or by the
/// product over columns before `a` (if `a <= t`).
fn direct_f(n: usize, s: &[Root], xi: Root, frame: &CrossFrame, a_t: usize) -> Vec<usize> {
    (frame.h..=a_t)
        .filter(|&a| {
            let image = if a > xi.col {
                frame.w_xi.apply(a)
            } else {
                upto_column(n, s, a - 1).apply(a)
            };
            image < frame.h
        })
        .collect()
}

/// Runs every check on one ideal and aggregates the outcomes.
pub fn full_report(ideal: &RegularIdeal, opts: &VerifyOptions) -> VerificationReport {
    let seed = opts.seed;
    let mut report = structural_checks(ideal, seed);
    let counts = build_diagram(ideal).counts();

    let records = match all_invariants(ideal) {
        Ok(r) => {
            report.checks.push(CheckResult::new(
                "invariants.records",
                r.len() as u64,
                seed,
                None,
            ));
            r
        }
        Err(e) => {
            report.checks.push(CheckResult::new(
                "invariants.records",
                0,
                seed,
                Some(e.to_string()),
            ));
            return report;
        }
    };

    let tri_failure = records
        .iter()
        .find_map(|r| triangular_decomposition(r).err().map(|e| e.to_string()));
    report.checks.push(CheckResult::new(
        "invariants.triangular",
        records.len() as u64,
        seed,
        tri_failure,
    ));
    let degree_failure = records.iter().find_map(|r| match (r.case, r.d_star) {
        (Case::One, _) if r.degree != 0 => {
            Some(format!("{}: case 1 with degree {}", r.xi, r.degree))
        }
        (Case::Two, Some(ds)) if ds != r.degree => {
            Some(format!("{}: degree {} vs d* {ds}", r.xi, r.degree))
        }
        (Case::Two, None) => Some(format!("{}: case 2 without d*", r.xi)),
        _ => None,
    });
    report.checks.push(CheckResult::new(
        "invariants.degree_law",
        records.len() as u64,
        seed,
        degree_failure,
    ));

    report.merge(check_invariance(&records, ideal, opts.trials, seed));

    let stats = skew_rank_stats(ideal, opts.rank_samples, seed);
    let skew_failure = if !stats.max_rank.is_multiple_of(2) {
        Some(format!("odd skew rank {}", stats.max_rank))
    } else if stats.max_rank != counts.plus_minus || stats.corank != counts.crosses {
        Some(format!(
            "max rank {} / corank {} vs {} plus-minus / {} crosses",
            stats.max_rank, stats.corank, counts.plus_minus, counts.crosses
        ))
    } else {
        None
    };
    report.checks.push(CheckResult::new(
        "orbits.skew_rank",
        opts.rank_samples + 1,
        seed,
        skew_failure,
    ));

    let polys: Vec<Polynomial> = records.iter().map(|r| r.p.clone()).collect();
    let jac_failure = match jacobian_rank(&polys, &prime_point(ideal).full_point()) {
        Ok(r) if r == records.len() => None,
        Ok(r) => Some(format!("Jacobian rank {r}, expected {}", records.len())),
        Err(e) => Some(e.to_string()),
    };
    report.checks.push(CheckResult::new(
        "invariants.jacobian_rank",
        1,
        seed,
        jac_failure,
    ));

    match oracle_invariants(ideal, opts.max_degree, opts.budget) {
        Ok(basis) => {
            let failure = records
                .iter()
                .filter(|r| r.p.degree().is_some_and(|d| d <= opts.max_degree))
                .find(|r| !in_span(&basis, &r.p))
                .map(|r| format!("P{} is not in the oracle span", r.xi));
            report.checks.push(CheckResult::new(
                "oracle.containment",
                basis.len() as u64,
                seed,
                failure,
            ));
        }
        Err(e) => report
            .checks
            .push(CheckResult::skipped("oracle.containment", e.to_string())),
    }
    report
}
