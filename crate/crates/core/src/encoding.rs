//! Genotype encodings and their decoders.
//!
//! All three encodings decode to a [`Tour`]:
//!
//! * [`EncodingKind::Nse`]: `n - 1` forward shifts, one per city of a
//!   reference tour (the first city is fixed and hidden). Shifts are
//!   applied in reference order, each moving its city forward circularly
//!   over positions `2..=n`. Every allele lies in `[0, n - 2]`, so any
//!   in-bounds vector decodes to a valid tour.
//! * [`EncodingKind::Dc`]: a guide of position pairs swapped, pair by
//!   pair, on a copy of a fixed map tour.
//! * [`EncodingKind::Pr`]: the permutation is the genotype.
//!
//! The GA works on raw gene vectors (`Vec<usize>`) through an
//! [`EncodingAdapter`], which knows the bounds, the reference tour and how
//! to decode, sample and seed genotypes for one encoding.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tour::{canonical_tour, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EncodingKind {
    Nse,
    Pr,
    Dc,
}

impl EncodingKind {
    pub const ALL: [EncodingKind; 3] = [EncodingKind::Nse, EncodingKind::Pr, EncodingKind::Dc];
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            EncodingKind::Nse => "NSE",
            EncodingKind::Pr => "PR",
            EncodingKind::Dc => "DC",
        })
    }
}

impl FromStr for EncodingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "NSE" => Ok(EncodingKind::Nse),
            "PR" => Ok(EncodingKind::Pr),
            "DC" => Ok(EncodingKind::Dc),
            _ => Err(Error::Validation(format!(
                "unknown encoding `{s}` (expected nse, pr or dc)"
            ))),
        }
    }
}

/// Reduces an arbitrary shift count to its in-bounds allele.
///
/// `n - 1` single moves bring a city back to where it started, so only the
/// remainder matters.
pub fn nse_reduce(raw_shift: usize, n: usize) -> usize {
    assert!(n >= 3, "node shift encoding needs at least 3 cities");
    raw_shift % (n - 1)
}

/// A node shift chromosome for an `n`-city tour.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NseChromosome {
    shifts: Vec<usize>,
}

impl NseChromosome {
    pub fn new(shifts: Vec<usize>, n: usize) -> Result<Self> {
        check_nse(&shifts, n)?;
        Ok(NseChromosome { shifts })
    }

    /// Accepts any shift counts and reduces them with [`nse_reduce`].
    pub fn from_raw(raw: &[usize], n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Contract(format!("NSE needs at least 3 cities, got {n}")));
        }
        NseChromosome::new(raw.iter().map(|&s| nse_reduce(s, n)).collect(), n)
    }

    pub fn zeros(n: usize) -> Self {
        NseChromosome {
            shifts: vec![0; n.saturating_sub(1)],
        }
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    /// Number of cities the chromosome applies to.
    pub fn n(&self) -> usize {
        self.shifts.len() + 1
    }
}

fn check_nse(shifts: &[usize], n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Contract(format!("NSE needs at least 3 cities, got {n}")));
    }
    if shifts.len() != n - 1 {
        return Err(Error::Contract(format!(
            "NSE chromosome for {n} cities has length {}, expected {}",
            shifts.len(),
            n - 1
        )));
    }
    if let Some((pos, &s)) = shifts.iter().enumerate().find(|(_, &s)| s > n - 2) {
        return Err(Error::Contract(format!(
            "NSE allele {s} at gene {} is outside [0, {}]",
            pos + 1,
            n - 2
        )));
    }
    Ok(())
}

/// Moves the city at reference index `i` forward by `shift` ranks.
///
/// `ranks[k]` is the current 0-based position of the reference's k-th city.
/// A rank past the end re-enters right after the fixed first position.
fn shift_rank(ranks: &mut [usize], i: usize, shift: usize) {
    let len = ranks.len();
    let old = ranks[i];
    debug_assert!(old >= 1, "rank 0 belongs to the fixed first city");
    let mut new = old + shift;
    if new >= len {
        new = new + 1 - len;
    }
    assert!(new < len, "shift {shift} wrapped more than once in a {len}-city tour");
    if new > old {
        for r in ranks.iter_mut() {
            if *r <= new && *r >= old {
                *r -= 1;
            }
        }
    } else {
        for r in ranks.iter_mut() {
            if *r < old && *r >= new {
                *r += 1;
            }
        }
    }
    ranks[i] = new;
}

fn place(reference: &[usize], ranks: &[usize]) -> Vec<usize> {
    let mut order = vec![0; reference.len()];
    for (city, &rank) in reference.iter().zip(ranks) {
        order[rank] = *city;
    }
    order
}

fn decode_nse_genes(reference: &[usize], shifts: &[usize]) -> Vec<usize> {
    let mut ranks: Vec<usize> = (0..reference.len()).collect();
    for (i, &shift) in shifts.iter().enumerate() {
        shift_rank(&mut ranks, i + 1, shift);
    }
    place(reference, &ranks)
}

fn check_reference(reference: &Tour, n: usize) -> Result<()> {
    if reference.len() != n {
        return Err(Error::Contract(format!(
            "reference tour has {} cities, chromosome expects {n}",
            reference.len()
        )));
    }
    Ok(())
}

/// Decodes a node shift chromosome against its reference tour.
pub fn nse_decode(reference: &Tour, chromo: &NseChromosome) -> Result<Tour> {
    check_reference(reference, chromo.n())?;
    Ok(Tour::from_order_unchecked(decode_nse_genes(
        reference.order(),
        chromo.shifts(),
    )))
}

/// Like [`nse_decode`], but returns the tour after every gene is applied.
/// The last entry is the decoded tour.
pub fn nse_decode_trace(reference: &Tour, chromo: &NseChromosome) -> Result<Vec<Tour>> {
    check_reference(reference, chromo.n())?;
    let mut ranks: Vec<usize> = (0..reference.len()).collect();
    let mut states = Vec::with_capacity(chromo.shifts().len());
    for (i, &shift) in chromo.shifts().iter().enumerate() {
        shift_rank(&mut ranks, i + 1, shift);
        states.push(Tour::from_order_unchecked(place(reference.order(), &ranks)));
    }
    Ok(states)
}

/// A double-chromosome guide: consecutive pairs of 0-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DcChromosome {
    guide: Vec<usize>,
}

impl DcChromosome {
    pub fn new(guide: Vec<usize>, n: usize) -> Result<Self> {
        check_dc(&guide, n)?;
        Ok(DcChromosome { guide })
    }

    /// Builds a guide from 1-based positions, e.g. `[2, 3, 1, 4]`.
    pub fn from_one_based(positions: &[usize], n: usize) -> Result<Self> {
        if positions.iter().any(|&p| p == 0) {
            return Err(Error::Contract("DC guide positions start at 1".into()));
        }
        DcChromosome::new(positions.iter().map(|p| p - 1).collect(), n)
    }

    /// A guide of `len` self-swaps, which leaves any map unchanged.
    pub fn identity(len: usize, n: usize) -> Result<Self> {
        let guide = (0..len / 2).flat_map(|k| [k % n, k % n]).collect();
        DcChromosome::new(guide, n)
    }

    pub fn guide(&self) -> &[usize] {
        &self.guide
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.guide.chunks_exact(2).map(|p| (p[0], p[1]))
    }
}

fn check_dc(guide: &[usize], n: usize) -> Result<()> {
    if guide.len() % 2 != 0 {
        return Err(Error::Contract(format!(
            "DC guide length {} is odd",
            guide.len()
        )));
    }
    if let Some(&p) = guide.iter().find(|&&p| p >= n) {
        return Err(Error::Contract(format!(
            "DC guide position {} is outside [1, {n}]",
            p + 1
        )));
    }
    Ok(())
}

fn apply_swaps(map: &[usize], guide: &[usize]) -> Vec<usize> {
    let mut order = map.to_vec();
    for pair in guide.chunks_exact(2) {
        order.swap(pair[0], pair[1]);
    }
    order
}

/// Applies the guide's swaps, in order, to a copy of the map tour.
pub fn dc_decode(map: &Tour, guide: &DcChromosome) -> Result<Tour> {
    check_dc(guide.guide(), map.len())?;
    Ok(Tour::from_order_unchecked(apply_swaps(
        map.order(),
        guide.guide(),
    )))
}

/// The path representation decodes to itself.
pub fn pr_decode(genotype: &Tour) -> Tour {
    genotype.clone()
}

/// Binds an encoding to a problem size and a reference tour.
///
/// The reference is the NSE reference tour and the DC map tour; PR ignores
/// it. Genotypes handled by the adapter are plain gene vectors:
///
/// | kind | length            | gene range        |
/// |------|-------------------|-------------------|
/// | NSE  | `n - 1`           | `0..=n-2` shifts  |
/// | DC   | even, default `n` rounded down | `0..n` positions |
/// | PR   | `n`               | a permutation of `0..n` |
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingAdapter {
    kind: EncodingKind,
    reference: Tour,
    genome_len: usize,
}

impl EncodingAdapter {
    pub fn new(kind: EncodingKind, reference: Tour) -> Result<Self> {
        let n = reference.len();
        if n < 3 {
            return Err(Error::Validation(format!(
                "encodings need at least 3 cities, got {n}"
            )));
        }
        let genome_len = match kind {
            EncodingKind::Nse => n - 1,
            EncodingKind::Dc => n & !1,
            EncodingKind::Pr => n,
        };
        Ok(EncodingAdapter {
            kind,
            reference,
            genome_len,
        })
    }

    /// Adapter over the canonical reference tour `(1, ..., n)`.
    pub fn canonical(kind: EncodingKind, n: usize) -> Result<Self> {
        EncodingAdapter::new(kind, canonical_tour(n)?)
    }

    /// Overrides the DC guide length. Must be even and at least 2.
    pub fn with_guide_len(mut self, len: usize) -> Result<Self> {
        if self.kind != EncodingKind::Dc {
            return Err(Error::Validation(format!(
                "guide length only applies to DC, not {}",
                self.kind
            )));
        }
        if len < 2 || len % 2 != 0 {
            return Err(Error::Validation(format!(
                "DC guide length must be even and at least 2, got {len}"
            )));
        }
        self.genome_len = len;
        Ok(self)
    }

    pub fn kind(&self) -> EncodingKind {
        self.kind
    }

    pub fn reference(&self) -> &Tour {
        &self.reference
    }

    pub fn n(&self) -> usize {
        self.reference.len()
    }

    pub fn genome_len(&self) -> usize {
        self.genome_len
    }

    /// Largest value a gene may take (inclusive). Lower bound is always 0.
    pub fn gene_max(&self) -> usize {
        match self.kind {
            EncodingKind::Nse => self.n() - 2,
            EncodingKind::Dc | EncodingKind::Pr => self.n() - 1,
        }
    }

    pub fn check_genotype(&self, genes: &[usize]) -> Result<()> {
        match self.kind {
            EncodingKind::Nse => check_nse(genes, self.n()),
            EncodingKind::Dc => {
                check_dc(genes, self.n())?;
                if genes.len() != self.genome_len {
                    return Err(Error::Contract(format!(
                        "DC guide has length {}, adapter expects {}",
                        genes.len(),
                        self.genome_len
                    )));
                }
                Ok(())
            }
            EncodingKind::Pr => crate::tour::validate_tour(genes, self.n())
                .map_err(|v| Error::Contract(format!("PR genotype is not a tour: {v}"))),
        }
    }

    pub fn decode(&self, genes: &[usize]) -> Result<Tour> {
        self.check_genotype(genes)?;
        let order = match self.kind {
            EncodingKind::Nse => decode_nse_genes(self.reference.order(), genes),
            EncodingKind::Dc => apply_swaps(self.reference.order(), genes),
            EncodingKind::Pr => genes.to_vec(),
        };
        Ok(Tour::from_order_unchecked(order))
    }

    /// Draws a uniformly random genotype.
    pub fn random_genotype<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        match self.kind {
            EncodingKind::Nse | EncodingKind::Dc => {
                let max = self.gene_max();
                (0..self.genome_len).map(|_| rng.gen_range(0..=max)).collect()
            }
            EncodingKind::Pr => {
                let mut order: Vec<usize> = (0..self.n()).collect();
                order.shuffle(rng);
                order
            }
        }
    }

    /// Returns a genotype that decodes exactly to `tour`.
    ///
    /// NSE and DC re-center the adapter on `tour` and return the all-zero
    /// chromosome or the all-self-swap guide respectively.
    pub fn seed_genotype(&mut self, tour: &Tour) -> Result<Vec<usize>> {
        if tour.len() != self.n() {
            return Err(Error::Validation(format!(
                "seed tour has {} cities, adapter expects {}",
                tour.len(),
                self.n()
            )));
        }
        Ok(match self.kind {
            EncodingKind::Nse => {
                self.reference = tour.clone();
                vec![0; self.genome_len]
            }
            EncodingKind::Dc => {
                self.reference = tour.clone();
                DcChromosome::identity(self.genome_len, self.n())?.guide
            }
            EncodingKind::Pr => tour.order().to_vec(),
        })
    }
}
