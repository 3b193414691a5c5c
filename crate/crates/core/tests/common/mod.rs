#![allow(dead_code)]

use coadjoint_core::poly::{rat, LambdaPolynomial, Polynomial};
use coadjoint_core::{RegularIdeal, Root};

pub fn y(i: usize, j: usize) -> Polynomial {
    Polynomial::var(Root::new(i, j))
}

pub fn parse(s: &str) -> Polynomial {
    s.parse().expect("test polynomial parses")
}

/// Entry of the characteristic matrix, read straight off the ideal.
pub fn char_entry(ideal: &RegularIdeal, i: usize, j: usize) -> LambdaPolynomial {
    if i == j {
        LambdaPolynomial::from_coeffs(vec![Polynomial::zero(), Polynomial::constant(rat(-1))])
    } else if i > j && !ideal.contains(&Root::new(i, j)) {
        LambdaPolynomial::constant(y(i, j))
    } else {
        LambdaPolynomial::zero()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let inv = (0..p.len())
        .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| p[a] > p[b])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Leibniz expansion over all permutations.
pub fn naive_minor(ideal: &RegularIdeal, rows: &[usize], cols: &[usize]) -> LambdaPolynomial {
    let mut total = LambdaPolynomial::zero();
    for p in permutations(rows.len()) {
        let mut term = LambdaPolynomial::constant(Polynomial::constant(rat(sign(&p))));
        for (a, &b) in p.iter().enumerate() {
            let e = char_entry(ideal, rows[a], cols[b]);
            if e.is_zero() {
                term = LambdaPolynomial::zero();
                break;
            }
            term = term.mul(&e);
        }
        if !term.is_zero() {
            total.add_assign(&term);
        }
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn same_up_to_sign(a: &Polynomial, b: &Polynomial) -> bool {
    a == b || *a == -b
}
