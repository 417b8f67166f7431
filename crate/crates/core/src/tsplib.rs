//! Reader for the subset of the TSPLIB format used by the benchmark
//! instances, and integer cost matrices built from it.
//!
//! Supported edge weight types are `EUC_2D`, `CEIL_2D` and `EXPLICIT` with
//! `EDGE_WEIGHT_FORMAT: FULL_MATRIX`. Anything else is rejected.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use log::warn;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeWeightKind {
    Euc2d,
    Ceil2d,
    ExplicitFullMatrix,
}

impl EdgeWeightKind {
    pub fn is_coordinate_based(self) -> bool {
        !matches!(self, EdgeWeightKind::ExplicitFullMatrix)
    }
}

impl fmt::Display for EdgeWeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeWeightKind::Euc2d => "EUC_2D",
            EdgeWeightKind::Ceil2d => "CEIL_2D",
            EdgeWeightKind::ExplicitFullMatrix => "EXPLICIT",
        })
    }
}

/// A parsed TSPLIB problem.
///
/// Exactly one of `coords` and `explicit_weights` is populated, depending on
/// `edge_weight_kind`. Node `i` of the file is stored at index `i - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    pub name: String,
    pub comment: Option<String>,
    pub dimension: usize,
    pub edge_weight_kind: EdgeWeightKind,
    pub coords: Option<Vec<(f64, f64)>>,
    pub explicit_weights: Option<Vec<Vec<i64>>>,
}

impl TspInstance {
    pub fn from_coords(
        name: impl Into<String>,
        kind: EdgeWeightKind,
        coords: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if !kind.is_coordinate_based() {
            return Err(Error::Validation(format!(
                "{kind} instances carry explicit weights, not coordinates"
            )));
        }
        let instance = TspInstance {
            name: name.into(),
            comment: None,
            dimension: coords.len(),
            edge_weight_kind: kind,
            coords: Some(coords),
            explicit_weights: None,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn from_weights(name: impl Into<String>, weights: Vec<Vec<i64>>) -> Result<Self> {
        let instance = TspInstance {
            name: name.into(),
            comment: None,
            dimension: weights.len(),
            edge_weight_kind: EdgeWeightKind::ExplicitFullMatrix,
            coords: None,
            explicit_weights: Some(weights),
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse_tsplib(&text).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })
    }

    /// Checks the structural invariants of the instance.
    pub fn validate(&self) -> Result<()> {
        if self.dimension < 3 {
            return Err(Error::Validation(format!(
                "dimension must be at least 3, got {}",
                self.dimension
            )));
        }
        match (&self.coords, &self.explicit_weights) {
            (Some(coords), None) if self.edge_weight_kind.is_coordinate_based() => {
                if coords.len() != self.dimension {
                    return Err(Error::Validation(format!(
                        "dimension {} but {} coordinate rows",
                        self.dimension,
                        coords.len()
                    )));
                }
            }
            (None, Some(rows)) if !self.edge_weight_kind.is_coordinate_based() => {
                if rows.len() != self.dimension || rows.iter().any(|r| r.len() != self.dimension)
                {
                    return Err(Error::Validation(format!(
                        "explicit weight table is not {0}x{0}",
                        self.dimension
                    )));
                }
            }
            _ => {
                return Err(Error::Validation(format!(
                    "{} instance must carry {}",
                    self.edge_weight_kind,
                    if self.edge_weight_kind.is_coordinate_based() {
                        "coordinates only"
                    } else {
                        "an explicit weight table only"
                    }
                )))
            }
        }
        Ok(())
    }

    /// Writes the instance back out in TSPLIB syntax.
    ///
    /// Coordinates are printed with the shortest representation that parses
    /// back to the same `f64`, so a parse of the output is exact.
    pub fn to_tsplib(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "NAME: {}", self.name);
        out.push_str("TYPE: TSP\n");
        if let Some(comment) = &self.comment {
            let _ = writeln!(out, "COMMENT: {comment}");
        }
        let _ = writeln!(out, "DIMENSION: {}", self.dimension);
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE: {}", self.edge_weight_kind);
        if let Some(coords) = &self.coords {
            out.push_str("NODE_COORD_SECTION\n");
            for (i, (x, y)) in coords.iter().enumerate() {
                let _ = writeln!(out, "{} {x:?} {y:?}", i + 1);
            }
        }
        if let Some(rows) = &self.explicit_weights {
            out.push_str("EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n");
            for row in rows {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        out.push_str("EOF\n");
        out
    }
}

impl FromStr for TspInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tsplib(s)
    }
}

enum Section {
    Header,
    Coords { rows: Vec<Option<(f64, f64)>>, seen: usize },
    Weights { values: Vec<i64> },
    Skipped { remaining: usize },
}

/// Parses TSPLIB text. Errors name the 1-based line they were found on.
pub fn parse_tsplib(text: &str) -> Result<TspInstance> {
    let mut name: Option<String> = None;
    let mut comment: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut kind: Option<EdgeWeightKind> = None;
    let mut explicit_format: Option<String> = None;
    let mut coords: Option<Vec<(f64, f64)>> = None;
    let mut weights: Option<Vec<Vec<i64>>> = None;

    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }

        // A keyword line ends whatever data section is open.
        let starts_keyword = line
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic());
        if starts_keyword {
            close_section(&mut section, dimension, lineno, &mut coords, &mut weights)?;
        }

        match &mut section {
            Section::Coords { rows, seen } => {
                let mut fields = line.split_whitespace();
                let (Some(id), Some(x), Some(y), None) =
                    (fields.next(), fields.next(), fields.next(), fields.next())
                else {
                    return Err(Error::parse(lineno, "expected `<node> <x> <y>`"));
                };
                let id: usize = id
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad node id `{id}`")))?;
                let x: f64 = x
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad coordinate `{x}`")))?;
                let y: f64 = y
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad coordinate `{y}`")))?;
                if id == 0 || id > rows.len() {
                    return Err(Error::parse(
                        lineno,
                        format!("node {id} outside 1..={}", rows.len()),
                    ));
                }
                if rows[id - 1].replace((x, y)).is_some() {
                    return Err(Error::parse(lineno, format!("node {id} listed twice")));
                }
                *seen += 1;
                continue;
            }
            Section::Weights { values } => {
                for token in line.split_whitespace() {
                    let w: i64 = token
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad weight `{token}`")))?;
                    values.push(w);
                }
                continue;
            }
            Section::Skipped { remaining } => {
                *remaining = remaining.saturating_sub(1);
                if *remaining == 0 {
                    section = Section::Header;
                }
                continue;
            }
            Section::Header => {}
        }

        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        match key {
            "NAME" => name = Some(value.to_string()),
            "COMMENT" => comment = Some(value.to_string()),
            "TYPE" => {
                if value != "TSP" {
                    return Err(Error::parse(
                        lineno,
                        format!("unsupported problem TYPE `{value}`"),
                    ));
                }
            }
            "DIMENSION" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad DIMENSION `{value}`")))?;
                dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => {
                kind = Some(match value {
                    "EUC_2D" => EdgeWeightKind::Euc2d,
                    "CEIL_2D" => EdgeWeightKind::Ceil2d,
                    "EXPLICIT" => EdgeWeightKind::ExplicitFullMatrix,
                    other => {
                        return Err(Error::parse(
                            lineno,
                            format!("unsupported EDGE_WEIGHT_TYPE `{other}`"),
                        ))
                    }
                });
            }
            "EDGE_WEIGHT_FORMAT" => {
                if value != "FULL_MATRIX" {
                    return Err(Error::parse(
                        lineno,
                        format!("unsupported EDGE_WEIGHT_FORMAT `{value}`"),
                    ));
                }
                explicit_format = Some(value.to_string());
            }
            "NODE_COORD_SECTION" => {
                let n = need_dimension(dimension, lineno)?;
                match kind {
                    Some(k) if k.is_coordinate_based() => {}
                    _ => {
                        return Err(Error::parse(
                            lineno,
                            "NODE_COORD_SECTION requires EDGE_WEIGHT_TYPE EUC_2D or CEIL_2D",
                        ))
                    }
                }
                section = Section::Coords {
                    rows: vec![None; n],
                    seen: 0,
                };
            }
            "EDGE_WEIGHT_SECTION" => {
                need_dimension(dimension, lineno)?;
                if kind != Some(EdgeWeightKind::ExplicitFullMatrix) || explicit_format.is_none() {
                    return Err(Error::parse(
                        lineno,
                        "EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_TYPE EXPLICIT and \
                         EDGE_WEIGHT_FORMAT FULL_MATRIX",
                    ));
                }
                section = Section::Weights { values: Vec::new() };
            }
            "DISPLAY_DATA_SECTION" => {
                warn!("line {lineno}: skipping DISPLAY_DATA_SECTION");
                let n = need_dimension(dimension, lineno)?;
                section = Section::Skipped { remaining: n };
            }
            other => warn!("line {lineno}: ignoring unknown keyword `{other}`"),
        }
    }
    close_section(&mut section, dimension, last_line, &mut coords, &mut weights)?;

    let dimension = need_dimension(dimension, last_line)?;
    let kind = kind.ok_or_else(|| Error::parse(last_line, "missing EDGE_WEIGHT_TYPE"))?;
    if coords.is_none() && weights.is_none() {
        return Err(Error::parse(
            last_line,
            "missing NODE_COORD_SECTION or EDGE_WEIGHT_SECTION",
        ));
    }
    let instance = TspInstance {
        name: name.unwrap_or_default(),
        comment,
        dimension,
        edge_weight_kind: kind,
        coords,
        explicit_weights: weights,
    };
    instance
        .validate()
        .map_err(|e| Error::parse(last_line, e.to_string()))?;
    Ok(instance)
}

fn need_dimension(dimension: Option<usize>, lineno: usize) -> Result<usize> {
    dimension.ok_or_else(|| Error::parse(lineno, "DIMENSION must precede the data section"))
}

fn close_section(
    section: &mut Section,
    dimension: Option<usize>,
    lineno: usize,
    coords: &mut Option<Vec<(f64, f64)>>,
    weights: &mut Option<Vec<Vec<i64>>>,
) -> Result<()> {
    match std::mem::replace(section, Section::Header) {
        Section::Header => {}
        Section::Skipped { .. } => {}
        Section::Coords { rows, seen } => {
            if seen != rows.len() {
                return Err(Error::parse(
                    lineno,
                    format!("DIMENSION is {} but found {seen} coordinate rows", rows.len()),
                ));
            }
            *coords = Some(rows.into_iter().map(Option::unwrap).collect());
        }
        Section::Weights { values } => {
            let n = dimension.unwrap_or(0);
            if values.len() != n * n {
                return Err(Error::parse(
                    lineno,
                    format!(
                        "FULL_MATRIX of DIMENSION {n} needs {} weights, found {}",
                        n * n,
                        values.len()
                    ),
                ));
            }
            *weights = Some(values.chunks(n).map(<[i64]>::to_vec).collect());
        }
    }
    Ok(())
}

/// Dense symmetric integer cost matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    n: usize,
    costs: Vec<i64>,
}

impl CostMatrix {
    /// Builds a matrix from rows, checking that it is square, symmetric,
    /// non-negative and has a zero diagonal.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("cost table is not square".into()));
        }
        let costs: Vec<i64> = rows.iter().flatten().copied().collect();
        let matrix = CostMatrix { n, costs };
        matrix.check()?;
        Ok(matrix)
    }

    /// Builds a matrix from a symmetric cost function evaluated on `i < j`.
    pub fn from_fn(n: usize, mut cost: impl FnMut(usize, usize) -> i64) -> Result<Self> {
        let mut costs = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = cost(i, j);
                costs[i * n + j] = c;
                costs[j * n + i] = c;
            }
        }
        let matrix = CostMatrix { n, costs };
        matrix.check()?;
        Ok(matrix)
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.costs[i * n + i] != 0 {
                return Err(Error::Validation(format!(
                    "diagonal entry for city {} is not zero",
                    i + 1
                )));
            }
            for j in 0..n {
                let c = self.costs[i * n + j];
                if c < 0 {
                    return Err(Error::Validation(format!(
                        "negative cost {c} between cities {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
                if c != self.costs[j * n + i] {
                    return Err(Error::Validation(format!(
                        "asymmetric costs between cities {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.costs[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.costs[i * self.n..(i + 1) * self.n]
    }
}

/// TSPLIB `nint`: round half up.
fn nint(d: f64) -> i64 {
    (d + 0.5).floor() as i64
}

/// Materializes the integer travel costs of an instance using the TSPLIB
/// conventions for its edge weight type.
pub fn build_cost_matrix(instance: &TspInstance) -> Result<CostMatrix> {
    instance.validate()?;
    match instance.edge_weight_kind {
        EdgeWeightKind::Euc2d | EdgeWeightKind::Ceil2d => {
            let coords = instance.coords.as_deref().unwrap_or_default();
            let round: fn(f64) -> i64 = match instance.edge_weight_kind {
                EdgeWeightKind::Euc2d => nint,
                _ => |d: f64| d.ceil() as i64,
            };
            CostMatrix::from_fn(instance.dimension, |i, j| {
                let (xi, yi) = coords[i];
                let (xj, yj) = coords[j];
                round((xi - xj).hypot(yi - yj))
            })
        }
        EdgeWeightKind::ExplicitFullMatrix => {
            let rows = instance.explicit_weights.as_deref().unwrap_or_default();
            CostMatrix::from_rows(rows)
        }
    }
}
