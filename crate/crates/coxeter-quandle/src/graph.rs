//! Coxeter graphs: bond-order matrices, the input format, the built-in
//! catalog of standard types, and the odd subgraph whose components index
//! reflection conjugacy classes.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A word over generator indices. The empty word is the identity.
pub type Word = Vec<u8>;

/// Bond order `m(s,t)` between two generators.
///
/// `Infinite` is encoded as `0` in the interchange format; internally it is
/// a dedicated token so the matrix stays integral.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn from_code(code: i64) -> Option<Bond> {
        match code {
            0 => Some(Bond::Infinite),
            c if c > 0 && c <= u32::MAX as i64 => Some(Bond::Finite(c as u32)),
            _ => None,
        }
    }

    pub fn to_code(self) -> i64 {
        match self {
            Bond::Infinite => 0,
            Bond::Finite(m) => m as i64,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }

    /// An edge of the odd subgraph: finite odd order (and ≥ 3, so a real edge).
    pub fn is_odd_edge(self) -> bool {
        matches!(self, Bond::Finite(m) if m >= 3 && m % 2 == 1)
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare { row: usize, got: usize, expected: usize },
    #[error("generator count must be positive")]
    NoGenerators,
    #[error("too many generators: {0} (limit 255)")]
    TooManyGenerators(usize),
    #[error("duplicate generator label {0:?}")]
    DuplicateLabel(String),
    #[error("generator label {0:?} is empty or contains whitespace")]
    BadLabel(String),
    #[error("invalid bond order {code} at ({i},{j})")]
    BadBond { i: usize, j: usize, code: i64 },
    #[error("diagonal entry m({i},{i}) must be 1, got {got}")]
    BadDiagonal { i: usize, got: Bond },
    #[error("matrix not symmetric at ({i},{j}): {a} vs {b}")]
    Asymmetric { i: usize, j: usize, a: Bond, b: Bond },
    #[error("off-diagonal entry m({i},{j}) = {got} must be at least 2")]
    OffDiagonalTooSmall { i: usize, j: usize, got: Bond },
    #[error("unknown catalog type {0:?}")]
    UnknownCatalog(String),
    #[error("unknown generator label {0:?}")]
    UnknownGenerator(String),
}

/// Raw interchange form: `{"generators": [...], "m": [[...]]}` with 0 = ∞.
#[derive(Serialize, Deserialize)]
struct RawGraph {
    generators: Vec<String>,
    m: Vec<Vec<i64>>,
}

/// A validated Coxeter matrix: the defining datum of a Coxeter system (W,S).
///
/// Guarantees `m(s,s) = 1`, `m(s,t) = m(t,s)` and `m(s,t) ≥ 2` for `s ≠ t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoxeterMatrix {
    labels: Vec<String>,
    bonds: Vec<Bond>, // row-major n×n
}

impl CoxeterMatrix {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::NoGenerators);
        }
        if n > 255 {
            return Err(GraphError::TooManyGenerators(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(GraphError::BadLabel(l.clone()));
            }
            if labels[..i].contains(l) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        if rows.len() != n {
            return Err(GraphError::NotSquare { row: rows.len(), got: rows.len(), expected: n });
        }
        let mut bonds = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::NotSquare { row: i, got: row.len(), expected: n });
            }
            for (j, &code) in row.iter().enumerate() {
                let b = Bond::from_code(code).ok_or(GraphError::BadBond { i, j, code })?;
                bonds.push(b);
            }
        }
        let get = |i: usize, j: usize| bonds[i * n + j];
        for i in 0..n {
            if get(i, i) != Bond::Finite(1) {
                return Err(GraphError::BadDiagonal { i, got: get(i, i) });
            }
            for j in 0..i {
                if get(i, j) != get(j, i) {
                    return Err(GraphError::Asymmetric { i, j, a: get(i, j), b: get(j, i) });
                }
                if let Bond::Finite(m) = get(i, j) {
                    if m < 2 {
                        return Err(GraphError::OffDiagonalTooSmall { i, j, got: get(i, j) });
                    }
                }
            }
        }
        Ok(CoxeterMatrix { labels, bonds })
    }

    /// Build from a bond-order list using default labels (`s, t, u, ...`).
    pub fn from_bonds(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self, GraphError> {
        let mut rows = vec![vec![2i64; n]; n];
        for i in 0..n {
            rows[i][i] = 1;
        }
        for &(i, j, m) in edges {
            rows[i][j] = m;
            rows[j][i] = m;
        }
        CoxeterMatrix::new(default_labels(n), rows)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: u8) -> &str {
        &self.labels[g as usize]
    }

    pub fn bond(&self, i: u8, j: u8) -> Bond {
        self.bonds[i as usize * self.rank() + j as usize]
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.rank() as u8).into_iter()
    }

    /// Parse a space-separated word of generator labels. Whitespace-only
    /// input is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word, GraphError> {
        text.split_whitespace()
            .map(|tok| {
                self.labels
                    .iter()
                    .position(|l| l == tok)
                    .map(|i| i as u8)
                    .ok_or_else(|| GraphError::UnknownGenerator(tok.to_string()))
            })
            .collect()
    }

    /// Render a word as space-separated labels; the identity is the empty string.
    pub fn format_word(&self, word: &[u8]) -> String {
        word.iter().map(|&g| self.label(g)).collect::<Vec<_>>().join(" ")
    }

    /// The interchange JSON value (∞ back to 0).
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| self.bonds[i * n + j].to_code()).collect())
            .collect();
        serde_json::json!({ "generators": self.labels, "m": rows })
    }
}

fn default_labels(n: usize) -> Vec<String> {
    const LETTERS: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("g{i}")).collect()
    }
}

/// Parse an input document: either the JSON interchange format or the
/// compact catalog alias `coxeter <name>`.
pub fn parse_graph(text: &str) -> Result<CoxeterMatrix, GraphError> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("coxeter") {
        if rest.starts_with(char::is_whitespace) {
            return catalog(rest.trim());
        }
    }
    let raw: RawGraph =
        serde_json::from_str(trimmed).map_err(|e| GraphError::Syntax(e.to_string()))?;
    CoxeterMatrix::new(raw.generators, raw.m)
}

/// Expand a catalog name (`A3`, `B4`, `D5`, `I2(7)`, `H3`, `H4`, `F4`, `E6`,
/// `tilde-A1`, `tilde-A3`) to its standard matrix.
pub fn catalog(name: &str) -> Result<CoxeterMatrix, GraphError> {
    let unknown = || GraphError::UnknownCatalog(name.to_string());
    let path = |n: usize, bonds: &[i64]| -> Result<CoxeterMatrix, GraphError> {
        let edges: Vec<(usize, usize, i64)> =
            bonds.iter().enumerate().map(|(i, &m)| (i, i + 1, m)).collect();
        CoxeterMatrix::from_bonds(n, &edges)
    };
    match name {
        "H3" => return path(3, &[5, 3]),
        "H4" => return path(4, &[5, 3, 3]),
        "F4" => return path(4, &[3, 4, 3]),
        "E6" => {
            // chain 0-1-2-3-4 with 5 hanging off the middle node
            return CoxeterMatrix::from_bonds(
                6,
                &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)],
            );
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("tilde-A") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n > 254 {
            return Err(GraphError::TooManyGenerators(n + 1));
        }
        return match n {
            0 => Err(unknown()),
            1 => CoxeterMatrix::from_bonds(2, &[(0, 1, 0)]), // infinite dihedral
            n => {
                // cycle on n+1 vertices, all bonds 3
                let mut edges: Vec<(usize, usize, i64)> = (0..n).map(|i| (i, i + 1, 3)).collect();
                edges.push((0, n, 3));
                CoxeterMatrix::from_bonds(n + 1, &edges)
            }
        };
    }
    if let Some(inner) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: i64 = inner.parse().map_err(|_| unknown())?;
        if m < 2 {
            return Err(unknown());
        }
        return CoxeterMatrix::from_bonds(2, &[(0, 1, m)]);
    }
    for family in ["A", "B", "D"] {
        let Some(rest) = name.strip_prefix(family) else {
            continue;
        };
        let Ok(n) = rest.parse::<usize>() else {
            continue;
        };
        if n > 255 {
            return Err(GraphError::TooManyGenerators(n));
        }
        return match (family, n) {
            ("A", n) if n >= 1 => path(n, &vec![3; n - 1]),
            ("B", n) if n >= 2 => {
                let mut bonds = vec![3; n - 1];
                bonds[n - 2] = 4;
                path(n, &bonds)
            }
            ("D", n) if n >= 4 => {
                let mut edges: Vec<(usize, usize, i64)> =
                    (0..n - 2).map(|i| (i, i + 1, 3)).collect();
                edges.push((n - 3, n - 1, 3));
                CoxeterMatrix::from_bonds(n, &edges)
            }
            _ => Err(unknown()),
        };
    }
    Err(unknown())
}

/// Connected components of the odd subgraph Γ_odd.
///
/// Components are indexed by first appearance of their smallest generator;
/// `representatives[k]` is that smallest generator, so the representative
/// list is strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OddComponents {
    pub count: usize,
    pub class_of: Vec<usize>,
    pub representatives: Vec<u8>,
}

pub fn odd_components(matrix: &CoxeterMatrix) -> OddComponents {
    let n = matrix.rank();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let k = representatives.len();
        representatives.push(start as u8);
        let mut stack = vec![start];
        class_of[start] = k;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if class_of[j] == usize::MAX && matrix.bond(i as u8, j as u8).is_odd_edge() {
                    class_of[j] = k;
                    stack.push(j);
                }
            }
        }
    }
    OddComponents { count: representatives.len(), class_of, representatives }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a2_json() {
        let m = parse_graph(r#"{"generators":["s","t"],"m":[[1,3],[3,1]]}"#).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bond(0, 1), Bond::Finite(3));
        assert_eq!(m, catalog("A2").unwrap());
    }

    #[test]
    fn zero_encodes_infinity() {
        let m = parse_graph(r#"{"generators":["s","t"],"m":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(m.bond(0, 1), Bond::Infinite);
        assert_eq!(m, catalog("tilde-A1").unwrap());
    }

    #[test]
    fn rejects_asymmetric() {
        let err = parse_graph(r#"{"generators":["s","t"],"m":[[1,3],[4,1]]}"#).unwrap_err();
        assert!(matches!(err, GraphError::Asymmetric { .. }));
    }

    #[test]
    fn rejects_bad_diagonal_and_small_offdiagonal() {
        assert!(matches!(
            parse_graph(r#"{"generators":["s"],"m":[[2]]}"#).unwrap_err(),
            GraphError::BadDiagonal { .. }
        ));
        // diagonal 0 would be m(s,s) = ∞
        assert!(matches!(
            parse_graph(r#"{"generators":["s"],"m":[[0]]}"#).unwrap_err(),
            GraphError::BadDiagonal { .. }
        ));
        assert!(matches!(
            parse_graph(r#"{"generators":["s","t"],"m":[[1,1],[1,1]]}"#).unwrap_err(),
            GraphError::OffDiagonalTooSmall { .. }
        ));
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err = parse_graph(r#"{"generators":["s","s"],"m":[[1,3],[3,1]]}"#).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateLabel(_)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_graph("not json"), Err(GraphError::Syntax(_))));
        assert!(matches!(parse_graph(""), Err(GraphError::Syntax(_))));
    }

    #[test]
    fn coxeter_alias() {
        let m = parse_graph("coxeter I2(4)").unwrap();
        assert_eq!(m.bond(0, 1), Bond::Finite(4));
        assert!(parse_graph("coxeter Q9").is_err());
    }

    #[test]
    fn catalog_shapes() {
        assert_eq!(catalog("A1").unwrap().rank(), 1);
        assert_eq!(catalog("B3").unwrap().bond(1, 2), Bond::Finite(4));
        assert_eq!(catalog("D4").unwrap().bond(1, 3), Bond::Finite(3));
        assert_eq!(catalog("D4").unwrap().bond(2, 3), Bond::Finite(2));
        assert_eq!(catalog("E6").unwrap().rank(), 6);
        assert_eq!(catalog("tilde-A2").unwrap().bond(0, 2), Bond::Finite(3));
        assert!(catalog("A0").is_err());
        assert!(catalog("I2(1)").is_err());
        assert!(catalog("tilde-A0").is_err());
    }

    #[test]
    fn catalog_rejects_hostile_names_cheaply() {
        // huge ranks must fail fast without allocating the matrix
        assert!(matches!(catalog("A999999999"), Err(GraphError::TooManyGenerators(_))));
        assert!(matches!(catalog("tilde-A999999999"), Err(GraphError::TooManyGenerators(_))));
        assert!(catalog("A255").is_ok());
        assert!(matches!(catalog("A256"), Err(GraphError::TooManyGenerators(_))));
        // multi-byte first characters must not split mid-char
        assert!(catalog("Ä2").is_err());
        assert!(catalog("").is_err());
        assert!(catalog("B1").is_err());
        assert!(catalog("D3").is_err());
        assert!(catalog("I2(-4)").is_err());
    }

    #[test]
    fn odd_components_examples() {
        // A2: single odd edge, one class
        let odd = odd_components(&catalog("A2").unwrap());
        assert_eq!(odd.count, 1);
        assert_eq!(odd.class_of, vec![0, 0]);
        assert_eq!(odd.representatives, vec![0]);

        // B2: m = 4 is even, two classes
        let odd = odd_components(&catalog("B2").unwrap());
        assert_eq!(odd.count, 2);
        assert_eq!(odd.class_of, vec![0, 1]);

        // A1×A1: no edges at all (m = 2)
        let odd = odd_components(&catalog("I2(2)").unwrap());
        assert_eq!(odd.count, 2);

        // m(s,s) = 1 is odd but a loop: contributes no merge
        let odd = odd_components(&catalog("A1").unwrap());
        assert_eq!(odd.count, 1);

        // F4 splits in the middle even bond
        let odd = odd_components(&catalog("F4").unwrap());
        assert_eq!(odd.count, 2);
        assert_eq!(odd.class_of, vec![0, 0, 1, 1]);

        // tilde-A1: ∞ is not an odd integer
        assert_eq!(odd_components(&catalog("tilde-A1").unwrap()).count, 2);
    }

    #[test]
    fn word_round_trip() {
        let m = catalog("A2").unwrap();
        assert_eq!(m.parse_word("s t s").unwrap(), vec![0, 1, 0]);
        assert_eq!(m.format_word(&[0, 1, 0]), "s t s");
        assert_eq!(m.parse_word("  ").unwrap(), Vec::<u8>::new());
        assert!(matches!(m.parse_word("s q"), Err(GraphError::UnknownGenerator(_))));
    }

    #[test]
    fn json_echo_round_trips() {
        let m = catalog("tilde-A1").unwrap();
        let echoed = parse_graph(&m.to_json().to_string()).unwrap();
        assert_eq!(echoed, m);
    }
}
