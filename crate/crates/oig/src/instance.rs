//! TSPLIB ingestion and instance construction.
//!
//! Instances are built from symmetric TSPLIB files. Supported edge weight
//! types are `EUC_2D`, `ATT` and `EXPLICIT` (formats `FULL_MATRIX`,
//! `UPPER_ROW`, `LOWER_DIAG_ROW`, `UPPER_DIAG_ROW`); `GEO` and anything
//! else is rejected with a clear message. A parsed file is turned into an
//! [`Instance`] by fixing the node prizes, the depot, and the two budgets.
//!
//! Instances serialize to a flat text format (matrix, prizes, budgets) so
//! that downstream consumers never re-derive distances from coordinates.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, msg: msg.into() }
}

/// Edge weight layout of an `EXPLICIT` TSPLIB file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplicitFormat {
    FullMatrix,
    UpperRow,
    LowerDiagRow,
    UpperDiagRow,
}

/// Supported TSPLIB edge weight types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Euc2d,
    Att,
    Explicit(ExplicitFormat),
}

/// A parsed TSPLIB file, prior to any game-specific decoration.
#[derive(Debug, Clone)]
pub struct RawTsp {
    pub name: String,
    pub dimension: usize,
    pub weight_kind: WeightKind,
    /// Node coordinates; empty unless the weight kind is coordinate based.
    pub coords: Vec<(f64, f64)>,
    /// Flat weight list; empty unless the weight kind is `EXPLICIT`.
    pub weights: Vec<u32>,
}

/// Parses the contents of a TSPLIB95 `.tsp` file.
pub fn parse_tsplib(text: &str) -> Result<RawTsp, InstanceError> {
    let mut name = String::new();
    let mut dimension: Option<usize> = None;
    let mut weight_kind: Option<WeightKind> = None;
    let mut explicit_format: Option<ExplicitFormat> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut weights: Vec<u32> = Vec::new();

    #[derive(PartialEq)]
    enum Section {
        Header,
        Coords,
        Weights,
        Skip,
    }
    let mut section = Section::Header;

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }

        // Section headers may appear after any previous section.
        match line {
            "NODE_COORD_SECTION" => {
                section = Section::Coords;
                continue;
            }
            "EDGE_WEIGHT_SECTION" => {
                section = Section::Weights;
                continue;
            }
            "DISPLAY_DATA_SECTION" | "FIXED_EDGES_SECTION" | "NODE_COORD_TYPE" => {
                section = Section::Skip;
                continue;
            }
            _ => {}
        }

        match section {
            Section::Header => {
                let (key, value) = match line.split_once(':') {
                    Some((k, v)) => (k.trim(), v.trim()),
                    None => {
                        return Err(parse_err(lineno, format!("expected `KEY: value`, got `{line}`")))
                    }
                };
                match key {
                    "NAME" => name = value.to_string(),
                    "DIMENSION" => {
                        let d: usize = value
                            .parse()
                            .map_err(|_| parse_err(lineno, format!("bad DIMENSION `{value}`")))?;
                        dimension = Some(d);
                    }
                    "EDGE_WEIGHT_TYPE" => {
                        weight_kind = Some(match value {
                            "EUC_2D" => WeightKind::Euc2d,
                            "ATT" => WeightKind::Att,
                            "EXPLICIT" => {
                                // Format may have been seen already; patched below.
                                WeightKind::Explicit(ExplicitFormat::FullMatrix)
                            }
                            other => {
                                return Err(parse_err(
                                    lineno,
                                    format!("unsupported EDGE_WEIGHT_TYPE `{other}` (supported: EUC_2D, ATT, EXPLICIT)"),
                                ))
                            }
                        });
                    }
                    "EDGE_WEIGHT_FORMAT" => {
                        explicit_format = Some(match value {
                            "FULL_MATRIX" => ExplicitFormat::FullMatrix,
                            "UPPER_ROW" => ExplicitFormat::UpperRow,
                            "LOWER_DIAG_ROW" => ExplicitFormat::LowerDiagRow,
                            "UPPER_DIAG_ROW" => ExplicitFormat::UpperDiagRow,
                            other => {
                                return Err(parse_err(
                                    lineno,
                                    format!("unsupported EDGE_WEIGHT_FORMAT `{other}`"),
                                ))
                            }
                        });
                    }
                    // TYPE, COMMENT, DISPLAY_DATA_TYPE, ... are irrelevant here.
                    _ => {}
                }
            }
            Section::Coords => {
                let mut it = line.split_whitespace();
                let _id = it
                    .next()
                    .ok_or_else(|| parse_err(lineno, "empty coordinate line"))?;
                let x: f64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad x coordinate"))?;
                let y: f64 = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad y coordinate"))?;
                coords.push((x, y));
            }
            Section::Weights => {
                for tok in line.split_whitespace() {
                    let w: i64 = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad edge weight `{tok}`")))?;
                    if w < 0 {
                        return Err(parse_err(lineno, format!("negative edge weight {w}")));
                    }
                    weights.push(w as u32);
                }
            }
            Section::Skip => {}
        }
    }

    let dimension =
        dimension.ok_or_else(|| InstanceError::Invalid("missing DIMENSION".into()))?;
    if dimension < 3 {
        return Err(InstanceError::Invalid(format!(
            "DIMENSION {dimension} too small: need at least 3 nodes"
        )));
    }
    let mut weight_kind =
        weight_kind.ok_or_else(|| InstanceError::Invalid("missing EDGE_WEIGHT_TYPE".into()))?;

    match weight_kind {
        WeightKind::Euc2d | WeightKind::Att => {
            if coords.len() != dimension {
                return Err(InstanceError::Invalid(format!(
                    "DIMENSION is {dimension} but NODE_COORD_SECTION has {} entries",
                    coords.len()
                )));
            }
        }
        WeightKind::Explicit(_) => {
            let format = explicit_format.ok_or_else(|| {
                InstanceError::Invalid("EXPLICIT instance without EDGE_WEIGHT_FORMAT".into())
            })?;
            weight_kind = WeightKind::Explicit(format);
            let n = dimension;
            let expect = match format {
                ExplicitFormat::FullMatrix => n * n,
                ExplicitFormat::UpperRow => n * (n - 1) / 2,
                ExplicitFormat::LowerDiagRow | ExplicitFormat::UpperDiagRow => n * (n + 1) / 2,
            };
            if weights.len() != expect {
                return Err(InstanceError::Invalid(format!(
                    "EDGE_WEIGHT_SECTION has {} entries, expected {expect} for {format:?} with DIMENSION {n}",
                    weights.len()
                )));
            }
        }
    }

    let raw = RawTsp { name, dimension, weight_kind, coords, weights };
    raw.check_explicit()?;
    Ok(raw)
}

impl RawTsp {
    /// TSPLIB nearest-integer rounding.
    fn nint(x: f64) -> u32 {
        (x + 0.5).floor() as u32
    }

    fn check_explicit(&self) -> Result<(), InstanceError> {
        if let WeightKind::Explicit(format) = self.weight_kind {
            let n = self.dimension;
            match format {
                ExplicitFormat::FullMatrix => {
                    for i in 0..n {
                        for j in 0..n {
                            if self.weights[i * n + j] != self.weights[j * n + i] {
                                return Err(InstanceError::Invalid(format!(
                                    "asymmetric FULL_MATRIX at ({},{})",
                                    i + 1,
                                    j + 1
                                )));
                            }
                        }
                        if self.weights[i * n + i] != 0 {
                            return Err(InstanceError::Invalid(format!(
                                "nonzero diagonal at node {}",
                                i + 1
                            )));
                        }
                    }
                }
                ExplicitFormat::LowerDiagRow | ExplicitFormat::UpperDiagRow => {
                    for i in 0..n {
                        let d = self.explicit_lookup(format, i, i);
                        if d != 0 {
                            return Err(InstanceError::Invalid(format!(
                                "nonzero diagonal at node {}",
                                i + 1
                            )));
                        }
                    }
                }
                ExplicitFormat::UpperRow => {}
            }
        }
        Ok(())
    }

    fn explicit_lookup(&self, format: ExplicitFormat, i: usize, j: usize) -> u32 {
        let n = self.dimension;
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let idx = match format {
            ExplicitFormat::FullMatrix => i * n + j,
            // Row a holds d(a, a+1..n-1).
            ExplicitFormat::UpperRow => a * (2 * n - a - 1) / 2 + (b - a - 1),
            // Row b holds d(b, 0..b).
            ExplicitFormat::LowerDiagRow => b * (b + 1) / 2 + a,
            // Row a holds d(a, a..n-1).
            ExplicitFormat::UpperDiagRow => a * n - (a * a - a) / 2 + (b - a),
        };
        self.weights[idx]
    }

    /// TSPLIB-conformant integer distance between two distinct nodes
    /// (0-based indices).
    pub fn edge_weight(&self, i: usize, j: usize) -> Result<u32, InstanceError> {
        if i == j {
            return Err(InstanceError::Invalid(format!(
                "edge weight requested for identical endpoints {}",
                i + 1
            )));
        }
        if i >= self.dimension || j >= self.dimension {
            return Err(InstanceError::Invalid(format!(
                "node index out of range: ({}, {}) with dimension {}",
                i + 1,
                j + 1,
                self.dimension
            )));
        }
        Ok(match self.weight_kind {
            WeightKind::Euc2d => {
                let (xi, yi) = self.coords[i];
                let (xj, yj) = self.coords[j];
                Self::nint(((xi - xj).powi(2) + (yi - yj).powi(2)).sqrt())
            }
            WeightKind::Att => {
                let (xi, yi) = self.coords[i];
                let (xj, yj) = self.coords[j];
                let r = (((xi - xj).powi(2) + (yi - yj).powi(2)) / 10.0).sqrt();
                let t = Self::nint(r);
                if (t as f64) < r {
                    t + 1
                } else {
                    t
                }
            }
            WeightKind::Explicit(format) => self.explicit_lookup(format, i, j),
        })
    }
}

/// How node prizes are assigned when building an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrizeScheme {
    /// Every node is worth 1.
    Unit,
    /// Pseudorandom prizes `1 + (7141 i + 73) mod 100` with `i` the
    /// 1-based node index.
    Random,
}

impl PrizeScheme {
    pub fn code(self) -> &'static str {
        match self {
            PrizeScheme::Unit => "u",
            PrizeScheme::Random => "r",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "u" => Some(PrizeScheme::Unit),
            "r" => Some(PrizeScheme::Random),
            _ => None,
        }
    }

    /// Prize of the node with 0-based index `i`.
    pub fn prize(self, i: usize) -> u32 {
        match self {
            PrizeScheme::Unit => 1,
            PrizeScheme::Random => 1 + ((7141 * (i as u64 + 1) + 73) % 100) as u32,
        }
    }
}

/// A ready-to-solve game instance: complete graph, prizes and budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub n: usize,
    /// Full symmetric distance matrix, zero diagonal.
    pub dist: Vec<Vec<u32>>,
    /// Positive node prizes.
    pub prizes: Vec<u32>,
    /// 0-based depot index.
    pub depot: usize,
    /// Follower's distance budget.
    pub distance_budget: u64,
    /// Leader's interdiction budget (unit interdiction costs).
    pub interdiction_budget: u32,
    /// Optimal TSP tour length the distance budget was derived from.
    pub tsp_optimum: u64,
    pub prize_scheme: PrizeScheme,
}

/// Builds a game instance from a parsed TSPLIB file.
///
/// The distance budget is `floor(budget_factor * tsp_optimum)`; the depot
/// is a 0-based node index.
pub fn build_instance(
    raw: &RawTsp,
    prize_scheme: PrizeScheme,
    interdiction_budget: u32,
    budget_factor: f64,
    depot: usize,
    tsp_optimum: u64,
) -> Result<Instance, InstanceError> {
    if budget_factor <= 0.0 || !budget_factor.is_finite() {
        return Err(InstanceError::Invalid(format!(
            "budget factor must be positive, got {budget_factor}"
        )));
    }
    if tsp_optimum == 0 {
        return Err(InstanceError::Invalid("tsp optimum must be positive".into()));
    }
    if depot >= raw.dimension {
        return Err(InstanceError::Invalid(format!(
            "depot {} out of range for dimension {}",
            depot + 1,
            raw.dimension
        )));
    }
    let n = raw.dimension;
    let mut dist = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = raw.edge_weight(i, j)?;
            dist[i][j] = w;
            dist[j][i] = w;
        }
    }
    let prizes: Vec<u32> = (0..n).map(|i| prize_scheme.prize(i)).collect();
    let distance_budget = (budget_factor * tsp_optimum as f64).floor() as u64;
    let inst = Instance {
        name: raw.name.clone(),
        n,
        dist,
        prizes,
        depot,
        distance_budget,
        interdiction_budget,
        tsp_optimum,
        prize_scheme,
    };
    inst.validate()?;
    Ok(inst)
}

impl Instance {
    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.n < 3 {
            return Err(InstanceError::Invalid("instance needs at least 3 nodes".into()));
        }
        if self.depot >= self.n {
            return Err(InstanceError::Invalid("depot out of range".into()));
        }
        if self.dist.len() != self.n || self.dist.iter().any(|r| r.len() != self.n) {
            return Err(InstanceError::Invalid("distance matrix shape mismatch".into()));
        }
        for i in 0..self.n {
            if self.dist[i][i] != 0 {
                return Err(InstanceError::Invalid(format!("nonzero diagonal at {i}")));
            }
            for j in 0..self.n {
                if self.dist[i][j] != self.dist[j][i] {
                    return Err(InstanceError::Invalid(format!(
                        "asymmetric distances at ({i},{j})"
                    )));
                }
            }
        }
        if self.prizes.len() != self.n || self.prizes.iter().any(|&p| p == 0) {
            return Err(InstanceError::Invalid("prizes must be positive per node".into()));
        }
        Ok(())
    }

    pub fn total_prize(&self) -> u64 {
        self.prizes.iter().map(|&p| p as u64).sum()
    }

    /// Serializes to the flat text instance format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "oig-instance 1");
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "n {}", self.n);
        let _ = writeln!(s, "depot {}", self.depot + 1);
        let _ = writeln!(s, "scheme {}", self.prize_scheme.code());
        let _ = writeln!(s, "interdiction_budget {}", self.interdiction_budget);
        let _ = writeln!(s, "distance_budget {}", self.distance_budget);
        let _ = writeln!(s, "tsp_optimum {}", self.tsp_optimum);
        let _ = writeln!(s, "prizes");
        let prize_line: Vec<String> = self.prizes.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "{}", prize_line.join(" "));
        let _ = writeln!(s, "distances");
        for row in &self.dist {
            let line: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        let _ = writeln!(s, "end");
        s
    }

    /// Parses the flat text instance format.
    pub fn from_text(text: &str) -> Result<Instance, InstanceError> {
        let mut lines = text.lines().enumerate();
        let mut next_line = |what: &str| -> Result<(usize, &str), InstanceError> {
            loop {
                match lines.next() {
                    Some((i, l)) => {
                        let t = l.trim();
                        if !t.is_empty() {
                            return Ok((i + 1, t));
                        }
                    }
                    None => {
                        return Err(InstanceError::Invalid(format!(
                            "unexpected end of file, expected {what}"
                        )))
                    }
                }
            }
        };

        let (ln, header) = next_line("header")?;
        if header != "oig-instance 1" {
            return Err(parse_err(ln, "expected `oig-instance 1` header"));
        }
        let mut name = String::new();
        let mut n = 0usize;
        let mut depot = 0usize;
        let mut scheme = PrizeScheme::Unit;
        let mut interdiction_budget = 0u32;
        let mut distance_budget = 0u64;
        let mut tsp_optimum = 0u64;
        loop {
            let (ln, line) = next_line("field or `prizes`")?;
            if line == "prizes" {
                break;
            }
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| parse_err(ln, format!("expected `key value`, got `{line}`")))?;
            match key {
                "name" => name = value.to_string(),
                "n" => n = value.parse().map_err(|_| parse_err(ln, "bad n"))?,
                "depot" => {
                    let d: usize = value.parse().map_err(|_| parse_err(ln, "bad depot"))?;
                    if d == 0 {
                        return Err(parse_err(ln, "depot is 1-based in instance files"));
                    }
                    depot = d - 1;
                }
                "scheme" => {
                    scheme = PrizeScheme::from_code(value)
                        .ok_or_else(|| parse_err(ln, format!("unknown scheme `{value}`")))?
                }
                "interdiction_budget" => {
                    interdiction_budget =
                        value.parse().map_err(|_| parse_err(ln, "bad interdiction budget"))?
                }
                "distance_budget" => {
                    distance_budget =
                        value.parse().map_err(|_| parse_err(ln, "bad distance budget"))?
                }
                "tsp_optimum" => {
                    tsp_optimum = value.parse().map_err(|_| parse_err(ln, "bad tsp optimum"))?
                }
                other => return Err(parse_err(ln, format!("unknown field `{other}`"))),
            }
        }
        let (ln, prize_line) = next_line("prize values")?;
        let prizes: Vec<u32> = prize_line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| parse_err(ln, "bad prize value")))
            .collect::<Result<_, _>>()?;
        if prizes.len() != n {
            return Err(parse_err(ln, format!("expected {n} prizes, got {}", prizes.len())));
        }
        let (ln, dist_header) = next_line("`distances`")?;
        if dist_header != "distances" {
            return Err(parse_err(ln, "expected `distances` section"));
        }
        let mut dist = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, row_line) = next_line("distance row")?;
            let row: Vec<u32> = row_line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| parse_err(ln, "bad distance value")))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(parse_err(ln, format!("expected {n} distances, got {}", row.len())));
            }
            dist.push(row);
        }
        let (ln, tail) = next_line("`end`")?;
        if tail != "end" {
            return Err(parse_err(ln, "expected `end`"));
        }
        let inst = Instance {
            name,
            n,
            dist,
            prizes,
            depot,
            distance_budget,
            interdiction_budget,
            tsp_optimum,
            prize_scheme: scheme,
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Parses a two-column `name value` table of optimal TSP tour lengths.
/// Lines starting with `#` are comments.
pub fn parse_nu_table(text: &str) -> Result<HashMap<String, u64>, InstanceError> {
    let mut table = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let name = it.next().unwrap().to_string();
        let value: u64 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(idx + 1, format!("bad tour-length entry `{line}`")))?;
        table.insert(name, value);
    }
    Ok(table)
}
