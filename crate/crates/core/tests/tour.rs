mod support;

use nse_tsp::{canonical_tour, tour_cost, validate_tour, CostMatrix, Tour};
use proptest::prelude::*;

fn matrix_from_points(points: &[(i32, i32)]) -> CostMatrix {
    CostMatrix::from_fn(points.len(), |i, j| {
        let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
        ((dx * dx + dy * dy) as f64).sqrt().round() as i64
    })
    .unwrap()
}

fn points_and_order() -> impl Strategy<Value = (Vec<(i32, i32)>, Vec<usize>)> {
    (3usize..25).prop_flat_map(|n| {
        (
            prop::collection::vec((0i32..1000, 0i32..1000), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

#[test]
fn violations_are_named() {
    let err = validate_tour(&[0, 1, 1, 3], 4).unwrap_err();
    assert_eq!(err.to_string(), "city 2 duplicated, city 3 missing");
    assert!(validate_tour(&[0, 1, 2], 4).is_err());
    assert!(validate_tour(&[0, 1, 2, 4], 4).is_err());
    assert!(Tour::from_one_based(&[1, 2, 0]).is_err());
}

#[test]
fn display_and_parse_agree() {
    let tour = Tour::from_one_based(&[1, 4, 3, 5, 2]).unwrap();
    assert_eq!(tour.to_string(), "(1,4,3,5,2)");
    assert_eq!(tour.format_one_based("-"), "1-4-3-5-2");
    assert_eq!(Tour::parse_one_based("1-4-3-5-2").unwrap(), tour);
    assert_eq!(Tour::parse_one_based("1 4 3 5 2").unwrap(), tour);
}

#[test]
fn canonical_needs_three_cities() {
    assert!(canonical_tour(2).is_err());
    assert_eq!(canonical_tour(3).unwrap().order(), &[0, 1, 2]);
}

#[test]
fn unit_square_perimeter() {
    let m = matrix_from_points(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
    assert_eq!(tour_cost(&m, &canonical_tour(4).unwrap()).unwrap(), 40);
    let crossed = Tour::from_one_based(&[1, 3, 2, 4]).unwrap();
    assert_eq!(tour_cost(&m, &crossed).unwrap(), 48);
}

#[test]
fn size_mismatch_is_an_error() {
    let m = matrix_from_points(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
    assert!(tour_cost(&m, &canonical_tour(3).unwrap()).is_err());
}

proptest! {
    #[test]
    fn cost_ignores_rotation_and_direction(
        (points, order) in points_and_order(),
        shift in 0usize..25,
    ) {
        let n = order.len();
        let m = matrix_from_points(&points);
        let tour = Tour::new(order.clone()).unwrap();
        let cost = tour_cost(&m, &tour).unwrap();
        prop_assert!(cost >= 0);

        let mut rotated = order.clone();
        rotated.rotate_left(shift % n);
        prop_assert_eq!(tour_cost(&m, &Tour::new(rotated).unwrap()).unwrap(), cost);

        let mut reversed = order;
        reversed.reverse();
        prop_assert_eq!(tour_cost(&m, &Tour::new(reversed).unwrap()).unwrap(), cost);
    }
}
