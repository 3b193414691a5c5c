use super::{evaluate, Monomial, Point, Polynomial, Rational};
use crate::error::{invalid, Result};
use crate::linalg;
use crate::roots::{RegularIdeal, Root};

/// `{y_a, y_b} = [y_a, y_b]` for matrix units:
/// `[y_ij, y_kl] = delta_jk y_il - delta_li y_kj`.
pub fn generator_bracket(a: Root, b: Root) -> Polynomial {
    let mut out = Polynomial::zero();
    if a.col == b.row {
        out.add_term(
            Monomial::var(Root::new(a.row, b.col)),
            Rational::from_integer(1.into()),
        );
    }
    if b.col == a.row {
        out.add_term(
            Monomial::var(Root::new(b.row, a.col)),
            Rational::from_integer((-1).into()),
        );
    }
    out
}

/// The Poisson bracket `{p, q}` on the full algebra.
pub fn bracket(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    let pv = p.variables();
    let qv = q.variables();
    for a in &pv {
        let dp = p.derivative(a);
        for b in &qv {
            let g = generator_bracket(*a, *b);
            if g.is_zero() {
                continue;
            }
            out = &out + &(&(&dp * &q.derivative(b)) * &g);
        }
    }
    out
}

/// `{y[i+1,i], p}` reduced modulo the ideal. Errors if `p` involves a
/// variable of the ideal.
pub fn poisson_bracket_generator(
    i: usize,
    p: &Polynomial,
    ideal: &RegularIdeal,
) -> Result<Polynomial> {
    let n = ideal.n();
    if i < 1 || i >= n {
        return Err(invalid(format!("generator index {i} out of range 1..{n}")));
    }
    if let Some(r) = p.variables().into_iter().find(|r| ideal.contains(r)) {
        return Err(invalid(format!(
            "polynomial uses y[{},{}], which lies in the ideal",
            r.row, r.col
        )));
    }
    let g = Root::new(i + 1, i);
    if ideal.contains(&g) {
        return Ok(Polynomial::zero());
    }
    let mut out = Polynomial::zero();
    for b in p.variables() {
        let s = generator_bracket(g, b).reduce_mod(ideal);
        if s.is_zero() {
            continue;
        }
        out = &out + &(&p.derivative(&b) * &s);
    }
    Ok(out.reduce_mod(ideal))
}

/// Brackets of `p` with every simple generator, `i = 1..n-1`.
pub fn bracket_generators(p: &Polynomial, ideal: &RegularIdeal) -> Result<Vec<Polynomial>> {
    (1..ideal.n())
        .map(|i| poisson_bracket_generator(i, p, ideal))
        .collect()
}

/// Rank of the Jacobian matrix `(d p_a / d y_eta)` at `point`.
pub fn jacobian_rank(polys: &[Polynomial], point: &Point) -> Result<usize> {
    let vars: Vec<Root> = polys
        .iter()
        .flat_map(|p| p.variables())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        let row = vars
            .iter()
            .map(|v| evaluate(&p.derivative(v), point))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(linalg::rank(rows))
}
