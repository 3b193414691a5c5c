//! One extremal minor per cross cell, and its highest coefficient.
//!
//! For a cross `xi = (k,t)` let `h = w_xi(t)` and `J = {j <= t : w_xi(j) >= h}`.
//! When `h > t` the rows are `w_xi(J)`; when `h < t` they are `[h,t]` plus the
//! rows `i > t` with `w_xi(i) < h`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::build_diagram;
use crate::error::{invalid, invariant, Result};
use crate::minors::{build_phi, minor_lambda, CharMatrix, DegreeCache, MinorSpec};
use crate::poly::{LambdaPolynomial, Polynomial};
use crate::roots::{RegularIdeal, Root};
use crate::weyl::{fd_data, CrossFrame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Case {
    /// `w_xi(t) > t`.
    One,
    /// `w_xi(t) < t`.
    Two,
}

impl From<Case> for u8 {
    fn from(c: Case) -> u8 {
        match c {
            Case::One => 1,
            Case::Two => 2,
        }
    }
}

impl TryFrom<u8> for Case {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Case::One),
            2 => Ok(Case::Two),
            _ => Err(format!("case must be 1 or 2, got {v}")),
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub xi: Root,
    pub case: Case,
    pub h: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub degree: usize,
    pub d_star: Option<usize>,
    /// Highest coefficient, sign-normalized.
    #[serde(rename = "P")]
    pub p: Polynomial,
    pub extremal: bool,
    pub minor: LambdaPolynomial,
}

pub fn case_of(n: usize, crosses: &[Root], xi: Root) -> Result<(usize, Case)> {
    let frame = CrossFrame::new(n, crosses, xi)?;
    let case = if frame.is_case_two() {
        Case::Two
    } else {
        Case::One
    };
    if case == Case::One && frame.h != xi.row {
        return Err(invariant(format!(
            "{xi}: w_xi(t) = {} exceeds t but differs from k",
            frame.h
        )));
    }
    Ok((frame.h, case))
}

/// Columns `J` and rows `I` of the minor attached to `xi`.
pub fn column_rows(
    ideal: &RegularIdeal,
    crosses: &[Root],
    xi: Root,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let frame = CrossFrame::new(ideal.n(), crosses, xi)?;
    let cols = frame.cols.clone();
    let mut rows: Vec<usize> = if frame.is_case_two() {
        (frame.h..=xi.col).chain(frame.starred_rows()).collect()
    } else {
        cols.iter().map(|&j| frame.w_xi.apply(j)).collect()
    };
    rows.sort_unstable();
    rows.dedup();
    if rows.len() != cols.len() {
        return Err(invariant(format!(
            "{xi}: |I| = {} but |J| = {}",
            rows.len(),
            cols.len()
        )));
    }
    let contiguous = cols.last() == Some(&xi.col) && cols.windows(2).all(|w| w[1] == w[0] + 1);
    if !contiguous {
        return Err(invariant(format!(
            "{xi}: J = {cols:?} is not a segment ending at t"
        )));
    }
    Ok((cols, rows))
}

fn record_for(
    ideal: &RegularIdeal,
    phi: &CharMatrix,
    crosses: &[Root],
    xi: Root,
) -> Result<InvariantRecord> {
    let n = ideal.n();
    let (h, case) = case_of(n, crosses, xi)?;
    let (cols, rows) = column_rows(ideal, crosses, xi)?;
    let spec = MinorSpec::new(n, rows.clone(), cols.clone())?;
    let minor = minor_lambda(phi, &spec)?;
    let degree = minor
        .degree()
        .ok_or_else(|| invariant(format!("{xi}: the minor {spec} vanishes")))?;
    let p = minor.leading().expect("nonzero minor").sign_normalized();

    let d_star = match case {
        Case::One => {
            if degree != 0 {
                return Err(invariant(format!("{xi}: case 1 minor has degree {degree}")));
            }
            None
        }
        Case::Two => {
            let data = fd_data(ideal, crosses, xi, &cols)?;
            if data.d_star != degree {
                return Err(invariant(format!(
                    "{xi}: minor degree {degree} differs from predicted {}",
                    data.d_star
                )));
            }
            Some(data.d_star)
        }
    };

    let extremal = DegreeCache::new(phi).is_extremal(&spec)?;
    if !extremal {
        return Err(invariant(format!("{xi}: minor {spec} is not extremal")));
    }
    Ok(InvariantRecord {
        xi,
        case,
        h,
        rows,
        cols,
        degree,
        d_star,
        p,
        extremal,
        minor,
    })
}

/// The record for one cross `xi`, with every construction property checked.
pub fn invariant_for(ideal: &RegularIdeal, crosses: &[Root], xi: Root) -> Result<InvariantRecord> {
    if !crosses.contains(&xi) {
        return Err(invalid(format!("{xi} is not a cross cell")));
    }
    record_for(ideal, &build_phi(ideal), crosses, xi)
}

/// Records for all crosses, greatest first.
pub fn all_invariants(ideal: &RegularIdeal) -> Result<Vec<InvariantRecord>> {
    let d = build_diagram(ideal);
    let phi = build_phi(ideal);
    d.crosses()
        .iter()
        .map(|&xi| record_for(ideal, &phi, d.crosses(), xi))
        .collect()
}

/// `P = y_xi * Q + R` with `Q != 0`, `Q` and `R` free of `y_xi` and built
/// only from `y[i,j]` with `j < t`, or `j = t` and `i > k`.
pub fn triangular_decomposition(rec: &InvariantRecord) -> Result<(Polynomial, Polynomial)> {
    let xi = rec.xi;
    if rec.p.degree_in(&xi) != 1 {
        return Err(invariant(format!(
            "{xi}: P has degree {} in y_xi",
            rec.p.degree_in(&xi)
        )));
    }
    let (q, r) = rec.p.collect_linear(&xi);
    if q.is_zero() {
        return Err(invariant(format!("{xi}: Q vanishes")));
    }
    let allowed = |v: &Root| v.col < xi.col || (v.col == xi.col && v.row > xi.row);
    for (name, part) in [("Q", &q), ("R", &r)] {
        if let Some(v) = part.variables().into_iter().find(|v| !allowed(v)) {
            return Err(invariant(format!("{xi}: {name} uses y{v}")));
        }
    }
    Ok((q, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::phi_minor;
    use crate::roots::ideal_from_pairs;

    fn example1() -> (RegularIdeal, Vec<Root>) {
        let m = ideal_from_pairs(7, &[(5, 1), (7, 2)], false).unwrap();
        let s = build_diagram(&m).crosses().to_vec();
        (m, s)
    }

    fn y(i: usize, j: usize) -> Polynomial {
        Polynomial::var(Root::new(i, j))
    }

    #[test]
    fn cases() {
        let (_, s) = example1();
        assert_eq!(case_of(7, &s, Root::new(5, 4)).unwrap(), (5, Case::One));
        assert_eq!(case_of(7, &s, Root::new(7, 4)).unwrap(), (3, Case::Two));
        assert_eq!(case_of(7, &s, Root::new(4, 1)).unwrap(), (4, Case::One));
        assert!(case_of(7, &s, Root::new(6, 4)).is_err());
    }

    #[test]
    fn rows_and_columns() {
        let (m, s) = example1();
        assert_eq!(
            column_rows(&m, &s, Root::new(5, 4)).unwrap(),
            (vec![2, 3, 4], vec![5, 6, 7])
        );
        assert_eq!(
            column_rows(&m, &s, Root::new(7, 4)).unwrap(),
            (vec![1, 2, 3, 4], vec![3, 4, 6, 7])
        );
        assert_eq!(
            column_rows(&m, &s, Root::new(4, 1)).unwrap(),
            (vec![1], vec![4])
        );
    }

    #[test]
    fn example1_records() {
        let (m, _) = example1();
        let recs = all_invariants(&m).unwrap();
        assert_eq!(recs.len(), 5);
        assert_eq!(recs[0].p, y(4, 1));
        assert_eq!(recs[1].p, y(6, 2));
        assert_eq!(recs[2].p, y(7, 3));
        let p4 = &y(6, 2) * &(&y(7, 4) * &y(4, 1) + &y(7, 3) * &y(3, 1));
        assert_eq!(recs[3].p, p4);
        assert_eq!(recs[3].degree, 1);
        assert_eq!(recs[3].d_star, Some(1));
        assert_eq!(recs[3].case, Case::Two);
        let phi = build_phi(&m);
        let det = phi_minor(
            &phi,
            &MinorSpec::new(7, vec![5, 6, 7], vec![2, 3, 4]).unwrap(),
        )
        .unwrap();
        assert_eq!(recs[4].p, det.sign_normalized());
        assert!(recs.iter().all(|r| r.extremal));
    }

    #[test]
    fn decompositions() {
        let (m, s) = example1();
        let r4 = invariant_for(&m, &s, Root::new(7, 4)).unwrap();
        let (q, r) = triangular_decomposition(&r4).unwrap();
        assert_eq!(q, &y(6, 2) * &y(4, 1));
        assert_eq!(r, &(&y(6, 2) * &y(7, 3)) * &y(3, 1));

        let r1 = invariant_for(&m, &s, Root::new(4, 1)).unwrap();
        assert_eq!(
            triangular_decomposition(&r1).unwrap(),
            (Polynomial::one(), Polynomial::zero())
        );

        let r5 = invariant_for(&m, &s, Root::new(5, 4)).unwrap();
        let (q, _) = triangular_decomposition(&r5).unwrap();
        let phi = build_phi(&m);
        let minor = phi_minor(&phi, &MinorSpec::new(7, vec![6, 7], vec![2, 3]).unwrap()).unwrap();
        assert!(q == minor || q == -&minor);
    }

    #[test]
    fn corner_minors_n4() {
        let recs = all_invariants(&RegularIdeal::empty(4)).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].p, y(4, 1));
        assert_eq!(
            (recs[1].rows.clone(), recs[1].cols.clone()),
            (vec![3, 4], vec![1, 2])
        );
        assert!(all_invariants(&RegularIdeal::full(2)).unwrap().is_empty());
    }

    #[test]
    fn record_json() {
        let (m, s) = example1();
        let rec = invariant_for(&m, &s, Root::new(7, 4)).unwrap();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["xi"], serde_json::json!([7, 4]));
        assert_eq!(v["case"], 2);
        assert_eq!(v["rows"], serde_json::json!([3, 4, 6, 7]));
        let back: InvariantRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, rec);
        assert!(invariant_for(&m, &s, Root::new(6, 4)).is_err());
    }
}
