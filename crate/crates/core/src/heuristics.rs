//! Nearest-neighbour tour construction.

use crate::error::{Error, Result};
use crate::tour::{order_cost, Tour};
use crate::tsplib::CostMatrix;

/// Greedy tour from `start` (0-based): always travel to the closest
/// unvisited city, breaking ties by the smallest city index.
pub fn nearest_neighbour(matrix: &CostMatrix, start: usize) -> Result<Tour> {
    let n = matrix.n();
    if start >= n {
        return Err(Error::Validation(format!(
            "start city {} outside 1..={n}",
            start + 1
        )));
    }
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[current] = true;
    order.push(current);
    for _ in 1..n {
        let row = matrix.row(current);
        // Strict `<` keeps the smallest index among equal costs.
        let mut next = None;
        for (city, &cost) in row.iter().enumerate() {
            if visited[city] {
                continue;
            }
            match next {
                Some((_, best)) if cost >= best => {}
                _ => next = Some((city, cost)),
            }
        }
        let (city, _) = next.expect("an unvisited city remains");
        visited[city] = true;
        order.push(city);
        current = city;
    }
    Ok(Tour::from_order_unchecked(order))
}

/// Cheapest nearest-neighbour tour over every start city; ties go to the
/// smallest start.
pub fn best_nn_tour(matrix: &CostMatrix) -> Tour {
    let mut best: Option<(i64, Tour)> = None;
    for start in 0..matrix.n() {
        let tour = nearest_neighbour(matrix, start).expect("start is in range");
        let cost = order_cost(matrix, tour.order());
        if best.as_ref().map_or(true, |(c, _)| cost < *c) {
            best = Some((cost, tour));
        }
    }
    best.expect("matrix has at least one city").1
}
