//! Ground truth for small instances and MTZ model export.
//!
//! [`brute_force_optimum`] enumerates every tour of instances with at most
//! [`BRUTE_FORCE_MAX_N`] cities. [`export_mtz`] writes the Miller–Tucker–Zemlin
//! integer program in CPLEX LP format for an external MIP solver, and
//! [`tour_from_arc_solution`] turns the solver's arc variables back into a
//! tour.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tour::{order_cost, Tour};
use crate::tsplib::{CostMatrix, TspInstance};

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Exhaustive search with city 1 fixed first. Since the matrix is
/// symmetric only tours whose second city is smaller than their last are
/// visited. Among equal-cost tours the lexicographically smallest wins.
pub fn brute_force_optimum(matrix: &CostMatrix) -> Result<(Tour, i64)> {
    let n = matrix.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_N,
        });
    }
    if n < 3 {
        return Err(Error::Validation(format!(
            "a tour needs at least 3 cities, got {n}"
        )));
    }
    let mut search = Search {
        matrix,
        path: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.path.push(0);
    search.used[0] = true;
    search.extend(0);
    let (cost, order) = search.best.expect("n >= 3 has at least one tour");
    debug_assert_eq!(cost, order_cost(matrix, &order));
    Ok((Tour::from_order_unchecked(order), cost))
}

struct Search<'a> {
    matrix: &'a CostMatrix,
    path: Vec<usize>,
    used: Vec<bool>,
    best: Option<(i64, Vec<usize>)>,
}

impl Search<'_> {
    // Children are tried in increasing city order, so leaves arrive in
    // lexicographic order and a strict `<` keeps the smallest tie.
    fn extend(&mut self, partial: i64) {
        let n = self.matrix.n();
        let last = *self.path.last().expect("path starts at city 0");
        if self.path.len() == n {
            if self.path[1] > last {
                return;
            }
            let cost = partial + self.matrix.get(last, 0);
            if self.best.as_ref().map_or(true, |(c, _)| cost < *c) {
                self.best = Some((cost, self.path.clone()));
            }
            return;
        }
        for city in 1..n {
            if self.used[city] {
                continue;
            }
            self.used[city] = true;
            self.path.push(city);
            self.extend(partial + self.matrix.get(last, city));
            self.path.pop();
            self.used[city] = false;
        }
    }
}

/// One linear row `sum(coef * var) <sense> rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub sense: Sense,
    pub rhs: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Eq,
    Le,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    OutDegree,
    InDegree,
    Subtour,
}

/// The MTZ formulation for an `n`-city instance.
///
/// Variables are named with 1-based cities: `x_i_j` is 1 when the tour
/// travels from `i` to `j`, and `u_i` (for `i >= 2`) is the order in which
/// city `i` is visited.
#[derive(Debug, Clone, PartialEq)]
pub struct MtzModel {
    pub name: String,
    pub n: usize,
    /// `(i, j, c_ij)` for every ordered pair `i != j`, 1-based.
    pub arcs: Vec<(usize, usize, i64)>,
    /// 1-based cities carrying an order variable, each bounded by `[1, n - 1]`.
    pub order_vars: Vec<usize>,
    pub constraints: Vec<(ConstraintKind, Constraint)>,
}

fn x(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

fn u(i: usize) -> String {
    format!("u_{i}")
}

impl MtzModel {
    pub fn build(name: &str, matrix: &CostMatrix) -> Result<Self> {
        let n = matrix.n();
        if n < 3 {
            return Err(Error::Validation(format!(
                "MTZ export needs at least 3 cities, got {n}"
            )));
        }
        let n_i = n as i64;
        let mut arcs = Vec::with_capacity(n * (n - 1));
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                arcs.push((i, j, matrix.get(i - 1, j - 1)));
            }
        }
        let mut constraints = Vec::with_capacity(2 * n + (n - 1) * (n - 2));
        for i in 1..=n {
            constraints.push((
                ConstraintKind::OutDegree,
                Constraint {
                    name: format!("out_{i}"),
                    terms: (1..=n).filter(|&j| j != i).map(|j| (1, x(i, j))).collect(),
                    sense: Sense::Eq,
                    rhs: 1,
                },
            ));
        }
        for j in 1..=n {
            constraints.push((
                ConstraintKind::InDegree,
                Constraint {
                    name: format!("in_{j}"),
                    terms: (1..=n).filter(|&i| i != j).map(|i| (1, x(i, j))).collect(),
                    sense: Sense::Eq,
                    rhs: 1,
                },
            ));
        }
        // u_i - u_j + n x_ij <= n - 1 for i != j, both >= 2.
        for i in 2..=n {
            for j in (2..=n).filter(|&j| j != i) {
                constraints.push((
                    ConstraintKind::Subtour,
                    Constraint {
                        name: format!("mtz_{i}_{j}"),
                        terms: vec![(1, u(i)), (-1, u(j)), (n_i, x(i, j))],
                        sense: Sense::Le,
                        rhs: n_i - 1,
                    },
                ));
            }
        }
        Ok(MtzModel {
            name: name.to_string(),
            n,
            arcs,
            order_vars: (2..=n).collect(),
            constraints,
        })
    }

    pub fn binary_var_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn count(&self, kind: ConstraintKind) -> usize {
        self.constraints.iter().filter(|(k, _)| *k == kind).count()
    }

    /// Renders the model in CPLEX LP format.
    pub fn to_lp(&self) -> String {
        const TERMS_PER_LINE: usize = 8;
        let mut out = String::new();
        let _ = writeln!(out, "\\ MTZ model for {} ({} cities)", self.name, self.n);
        out.push_str("Minimize\n obj:");
        for (k, (i, j, c)) in self.arcs.iter().enumerate() {
            if k > 0 && k % TERMS_PER_LINE == 0 {
                out.push_str("\n     ");
            }
            let sign = if k == 0 { "" } else { "+ " };
            let _ = write!(out, " {sign}{c} {}", x(*i, *j));
        }
        out.push_str("\nSubject To\n");
        for (_, row) in &self.constraints {
            let _ = write!(out, " {}:", row.name);
            for (k, (coef, var)) in row.terms.iter().enumerate() {
                if k > 0 && k % TERMS_PER_LINE == 0 {
                    out.push_str("\n     ");
                }
                let term = match (k, *coef) {
                    (0, 1) => var.clone(),
                    (0, c) if c < 0 => format!("- {} {var}", -c),
                    (0, c) => format!("{c} {var}"),
                    (_, 1) => format!("+ {var}"),
                    (_, -1) => format!("- {var}"),
                    (_, c) if c < 0 => format!("- {} {var}", -c),
                    (_, c) => format!("+ {c} {var}"),
                };
                let _ = write!(out, " {term}");
            }
            let sense = match row.sense {
                Sense::Eq => "=",
                Sense::Le => "<=",
            };
            let _ = writeln!(out, " {sense} {}", row.rhs);
        }
        out.push_str("Bounds\n");
        for &i in &self.order_vars {
            let _ = writeln!(out, " 1 <= {} <= {}", u(i), self.n - 1);
        }
        out.push_str("Binary\n");
        for (k, (i, j, _)) in self.arcs.iter().enumerate() {
            out.push(' ');
            out.push_str(&x(*i, *j));
            if (k + 1) % TERMS_PER_LINE == 0 || k + 1 == self.arcs.len() {
                out.push('\n');
            }
        }
        out.push_str("End\n");
        out
    }
}

/// MTZ model of the instance as LP-format text.
pub fn export_mtz(instance: &TspInstance, matrix: &CostMatrix) -> Result<String> {
    if instance.dimension != matrix.n() {
        return Err(Error::Validation(format!(
            "instance has {} cities but the matrix has {}",
            instance.dimension,
            matrix.n()
        )));
    }
    Ok(MtzModel::build(&instance.name, matrix)?.to_lp())
}

/// Parses an arc variable name `x_i_j` into a 0-based `(i, j)` pair.
pub fn parse_arc_var(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("x_")?;
    let (i, j) = rest.split_once('_')?;
    let i: usize = i.parse().ok()?;
    let j: usize = j.parse().ok()?;
    Some((i.checked_sub(1)?, j.checked_sub(1)?))
}

/// Follows successor arcs from city 1 and returns the tour they form.
///
/// `arcs` maps 0-based `(i, j)` to the value of `x_ij` (0 or 1). Fails if a
/// city lacks exactly one outgoing arc, or if the arcs close a cycle before
/// every city is visited; the error names that cycle.
pub fn tour_from_arc_solution(arcs: &BTreeMap<(usize, usize), u8>, n: usize) -> Result<Tour> {
    let mut succ: Vec<Option<usize>> = vec![None; n];
    for (&(i, j), &v) in arcs {
        if v == 0 {
            continue;
        }
        if i >= n || j >= n || i == j {
            return Err(Error::Validation(format!(
                "arc ({}, {}) is not valid for {n} cities",
                i + 1,
                j + 1
            )));
        }
        if succ[i].replace(j).is_some() {
            return Err(Error::Validation(format!(
                "city {} has more than one outgoing arc",
                i + 1
            )));
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut current = 0;
    loop {
        seen[current] = true;
        order.push(current);
        let next = succ[current].ok_or_else(|| {
            Error::Validation(format!("city {} has no outgoing arc", current + 1))
        })?;
        if next == 0 {
            break;
        }
        if seen[next] {
            return Err(Error::Validation(format!(
                "city {} is entered twice",
                next + 1
            )));
        }
        current = next;
    }
    if order.len() < n {
        return Err(Error::Subtour {
            cycle: order.iter().map(|c| c + 1).collect(),
        });
    }
    Ok(Tour::from_order_unchecked(order))
}
