//! Tours in path representation and their cost.

use std::fmt;

use crate::error::{Error, Result};
use crate::tsplib::CostMatrix;

/// A closed tour stored as the visit order of 0-based city indices.
///
/// The closing edge from the last city back to the first is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Wraps `order` after checking it is a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        validate_tour(&order, order.len())?;
        Ok(Tour { order })
    }

    /// Builds a tour from 1-based city labels, e.g. `[1, 4, 3, 5, 2]`.
    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|&c| {
                c.checked_sub(1)
                    .ok_or_else(|| Error::Validation("city labels start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Tour::new(order)
    }

    /// Caller guarantees `order` is a permutation.
    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(validate_tour(&order, order.len()).is_ok());
        Tour { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn first(&self) -> usize {
        self.order[0]
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.order.iter().map(|c| c + 1).collect()
    }

    /// 1-based labels joined by `sep`.
    pub fn format_one_based(&self, sep: &str) -> String {
        let labels: Vec<String> = self.order.iter().map(|c| (c + 1).to_string()).collect();
        labels.join(sep)
    }

    /// Parses 1-based labels separated by commas, dashes or whitespace.
    pub fn parse_one_based(text: &str) -> Result<Self> {
        let labels = text
            .split(|c: char| c == ',' || c == '-' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad city label `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Tour::from_one_based(&labels)
    }
}

impl fmt::Display for Tour {
    /// `(1,4,3,5,2)`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.format_one_based(","))
    }
}

/// Why a sequence is not a tour. Cities are reported 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TourViolation {
    pub expected_len: usize,
    pub actual_len: usize,
    pub duplicated: Vec<usize>,
    pub missing: Vec<usize>,
    pub out_of_range: Vec<usize>,
}

impl fmt::Display for TourViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.expected_len != self.actual_len {
            parts.push(format!(
                "expected {} cities, found {}",
                self.expected_len, self.actual_len
            ));
        }
        parts.extend(self.out_of_range.iter().map(|c| {
            format!("city {c} outside 1..={}", self.expected_len)
        }));
        parts.extend(self.duplicated.iter().map(|c| format!("city {c} duplicated")));
        parts.extend(self.missing.iter().map(|c| format!("city {c} missing")));
        f.write_str(&parts.join(", "))
    }
}

impl std::error::Error for TourViolation {}

/// Checks that `order` (0-based) visits each of the `n` cities exactly once.
pub fn validate_tour(order: &[usize], n: usize) -> Result<(), TourViolation> {
    let mut seen = vec![0u32; n];
    let mut violation = TourViolation {
        expected_len: n,
        actual_len: order.len(),
        ..Default::default()
    };
    for &c in order {
        match seen.get_mut(c) {
            Some(count) => {
                *count += 1;
                if *count == 2 {
                    violation.duplicated.push(c + 1);
                }
            }
            None => violation.out_of_range.push(c + 1),
        }
    }
    violation.missing = (0..n).filter(|&c| seen[c] == 0).map(|c| c + 1).collect();
    violation.duplicated.sort_unstable();
    if violation.expected_len == violation.actual_len
        && violation.duplicated.is_empty()
        && violation.missing.is_empty()
        && violation.out_of_range.is_empty()
    {
        Ok(())
    } else {
        Err(violation)
    }
}

/// The tour `(1, 2, ..., n)`.
pub fn canonical_tour(n: usize) -> Result<Tour> {
    if n < 3 {
        return Err(Error::Validation(format!(
            "a tour needs at least 3 cities, got {n}"
        )));
    }
    Ok(Tour {
        order: (0..n).collect(),
    })
}

/// Total cost of the closed tour, including the edge back to the start.
pub fn tour_cost(matrix: &CostMatrix, tour: &Tour) -> Result<i64> {
    if tour.len() != matrix.n() {
        return Err(Error::Validation(format!(
            "tour visits {} cities but the matrix has {}",
            tour.len(),
            matrix.n()
        )));
    }
    Ok(order_cost(matrix, &tour.order))
}

/// Closed-walk cost of `order`; no validation.
pub(crate) fn order_cost(matrix: &CostMatrix, order: &[usize]) -> i64 {
    let Some((&last, _)) = order.split_last() else {
        return 0;
    };
    let open: i64 = order.windows(2).map(|w| matrix.get(w[0], w[1])).sum();
    open + matrix.get(last, order[0])
}
