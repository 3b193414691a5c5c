//! The symbol diagram of a regular factor.
//!
//! Cells of `M` get a bullet at step zero. Each later step puts a cross on
//! the greatest empty cell `(k,t)` and then, for every `t < a < k` with both
//! `(k,a)` and `(a,t)` still empty, a minus on `(k,a)` and a plus on `(a,t)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::roots::{positive_roots, RegularIdeal, Root};
use crate::weyl::{upto_column, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    Bullet,
    Cross,
    Plus,
    Minus,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Bullet => 'B',
            Symbol::Cross => 'X',
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }
}

/// What the sign pattern of the column products says about a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolClass {
    Minus,
    Bullet,
    PlusOrCross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub symbol: Symbol,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    cells: BTreeMap<Root, Cell>,
    crosses: Vec<Root>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCounts {
    pub crosses: usize,
    pub plus_minus: usize,
    pub bullets: usize,
}

pub fn build_diagram(ideal: &RegularIdeal) -> Diagram {
    let n = ideal.n();
    let mut cells: BTreeMap<Root, Cell> = BTreeMap::new();
    for r in ideal.roots().iter() {
        cells.insert(
            *r,
            Cell {
                symbol: Symbol::Bullet,
                step: 0,
            },
        );
    }
    let order = positive_roots(n);
    let mut crosses = Vec::new();
    let mut cursor = 0;
    loop {
        while cursor < order.len() && cells.contains_key(&order[cursor]) {
            cursor += 1;
        }
        let Some(&xi) = order.get(cursor) else { break };
        let step = crosses.len() + 1;
        crosses.push(xi);
        cells.insert(
            xi,
            Cell {
                symbol: Symbol::Cross,
                step,
            },
        );
        let (k, t) = (xi.row, xi.col);
        for a in t + 1..k {
            let minus = Root::new(k, a);
            let plus = Root::new(a, t);
            if !cells.contains_key(&minus) && !cells.contains_key(&plus) {
                cells.insert(
                    minus,
                    Cell {
                        symbol: Symbol::Minus,
                        step,
                    },
                );
                cells.insert(
                    plus,
                    Cell {
                        symbol: Symbol::Plus,
                        step,
                    },
                );
            }
        }
    }
    Diagram { n, cells, crosses }
}

impl Diagram {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The cross cells, greatest first.
    pub fn crosses(&self) -> &[Root] {
        &self.crosses
    }

    /// Number of the last step (equals the number of crosses).
    pub fn steps(&self) -> usize {
        self.crosses.len()
    }

    pub fn cell(&self, r: &Root) -> Option<Cell> {
        self.cells.get(r).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Root, &Cell)> + '_ {
        self.cells.iter().rev()
    }

    pub fn counts(&self) -> DiagramCounts {
        diagram_counts(self)
    }

    /// Text picture of the diagram as it stood after `step`; `None` draws
    /// the finished diagram. Cells on or above the diagonal are `.`, cells
    /// not yet filled are `_`.
    pub fn render_at(&self, step: Option<usize>) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let ch = if i <= j {
                    '.'
                } else {
                    match self.cells.get(&Root::new(i, j)) {
                        Some(c) if step.is_none_or(|s| c.step <= s) => c.symbol.as_char(),
                        _ => '_',
                    }
                };
                out.push(ch);
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self) -> String {
        self.render_at(None)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn diagram_counts(d: &Diagram) -> DiagramCounts {
    let mut counts = DiagramCounts {
        crosses: 0,
        plus_minus: 0,
        bullets: 0,
    };
    for c in d.cells.values() {
        match c.symbol {
            Symbol::Bullet => counts.bullets += 1,
            Symbol::Cross => counts.crosses += 1,
            Symbol::Plus | Symbol::Minus => counts.plus_minus += 1,
        }
    }
    counts
}

/// Classifies `eta = (b,t)` from the signs of `w^[t-1](eta)` and `w^[t](eta)`,
/// where `w^[t]` is the reflection product over the crosses in columns `<= t`.
pub fn symbol_by_signs(crosses: &[Root], n: usize, eta: Root) -> SymbolClass {
    let t = eta.col;
    let before = upto_column(n, crosses, t - 1);
    let after = upto_column(n, crosses, t);
    classify(&before, &after, eta)
}

fn classify(before: &Permutation, after: &Permutation, eta: Root) -> SymbolClass {
    if !before.maps_positive(eta) {
        SymbolClass::Minus
    } else if after.maps_positive(eta) {
        SymbolClass::Bullet
    } else {
        SymbolClass::PlusOrCross
    }
}

/// Resolves the sign class to a symbol using membership in the cross list.
pub fn symbol_from_class(class: SymbolClass, crosses: &[Root], eta: Root) -> Symbol {
    match class {
        SymbolClass::Minus => Symbol::Minus,
        SymbolClass::Bullet => Symbol::Bullet,
        SymbolClass::PlusOrCross if crosses.contains(&eta) => Symbol::Cross,
        SymbolClass::PlusOrCross => Symbol::Plus,
    }
}

/// Cells where the sign-based classification disagrees with the built diagram.
pub fn sign_mismatches(d: &Diagram) -> Vec<(Root, Symbol, Symbol)> {
    let n = d.n;
    let mut prefix = vec![Permutation::identity(n)];
    for t in 1..n {
        prefix.push(upto_column(n, &d.crosses, t));
    }
    let mut out = Vec::new();
    for eta in positive_roots(n) {
        let t = eta.col;
        let class = classify(&prefix[t - 1], &prefix[t], eta);
        let predicted = symbol_from_class(class, &d.crosses, eta);
        let actual = d.cells[&eta].symbol;
        if predicted != actual {
            out.push((eta, actual, predicted));
        }
    }
    out
}
