//! Decodes a node shift chromosome and a double-chromosome guide step by step.
//!
//!     cargo run --example decode_walkthrough

use nse_tsp::encoding::{dc_decode, nse_decode_trace, DcChromosome, NseChromosome};
use nse_tsp::Tour;

fn main() -> nse_tsp::Result<()> {
    let reference = Tour::from_one_based(&[1, 4, 3, 5, 2])?;
    let chromo = NseChromosome::new(vec![2, 1, 2, 1], reference.len())?;

    println!("NSE, reference {reference}, shifts {:?}", chromo.shifts());
    let states = nse_decode_trace(&reference, &chromo)?;
    for (k, state) in states.iter().enumerate() {
        let city = reference.order()[k + 1] + 1;
        println!("  city {city} forward {}: {state}", chromo.shifts()[k]);
    }

    // Shifts wrap: n - 1 single moves bring a city back where it started.
    let lapped = NseChromosome::from_raw(&[2 + 4, 1, 2 + 8, 1], reference.len())?;
    assert_eq!(lapped, chromo);

    let guide = DcChromosome::from_one_based(&[2, 3, 1, 4], reference.len())?;
    println!("DC, map {reference}, guide (2,3,1,4)");
    let mut map = reference.clone();
    for (a, b) in guide.pairs() {
        map = dc_decode(&map, &DcChromosome::new(vec![a, b], reference.len())?)?;
        println!("  swap {} and {}: {map}", a + 1, b + 1);
    }
    Ok(())
}
