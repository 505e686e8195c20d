//! Cost matrices, permutations, and assignment values.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::sampling::DistributionKind;

/// Dense n×n cost matrix, row-major, entries validated finite on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<f64>,
    /// Generating law, when the matrix came from a sampler. Matrices parsed
    /// from CSV carry no label.
    pub dist_label: Option<DistributionKind>,
}

impl CostMatrix {
    pub fn new(
        n: usize,
        entries: Vec<f64>,
        dist_label: Option<DistributionKind>,
    ) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidSize);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if !entries.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self {
            n,
            entries,
            dist_label,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j` (0-based).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Entry-wise negation; used to solve max problems with a min solver.
    pub fn negated(&self) -> CostMatrix {
        CostMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
            dist_label: self.dist_label,
        }
    }

    /// One CSV line per row, 17 significant digits per entry, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 24);
        for i in 0..self.n {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{x:.16e}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, Error> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| Error::MatrixParse {
                    line: idx + 1,
                    reason: e.to_string(),
                })?;
            rows.push(row);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::MatrixParse {
                line: 1,
                reason: "no rows".into(),
            });
        }
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MatrixParse {
                    line: idx + 1,
                    reason: format!("expected {} columns, got {}", n, row.len()),
                });
            }
        }
        CostMatrix::new(n, rows.concat(), None)
    }
}

/// Bijection of {1..n}; stored 0-based, serialized 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    /// Build from a 0-based mapping, verifying bijectivity.
    pub fn from_zero_based(mapping: Vec<usize>) -> Result<Self, Error> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &j in &mapping {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation);
            }
            seen[j] = true;
        }
        Ok(Self { mapping })
    }

    /// Build from 1-based indices, the documented external form.
    pub fn from_one_based(mapping: &[usize]) -> Result<Self, Error> {
        if !validate_permutation(mapping, mapping.len()) {
            return Err(Error::InvalidPermutation);
        }
        Ok(Self {
            mapping: mapping.iter().map(|&j| j - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    /// Image of row `i` (0-based in, 0-based out).
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn as_zero_based(&self) -> &[usize] {
        &self.mapping
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|&j| j + 1).collect()
    }
}

/// Comma-separated 1-based indices, e.g. `2,1,3`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.mapping.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mapping = s
            .split(',')
            .map(|f| f.trim().parse::<usize>())
            .collect::<Result<Vec<usize>, _>>()
            .map_err(|_| Error::InvalidPermutation)?;
        Permutation::from_one_based(&mapping)
    }
}

/// True iff `mapping` (1-based indices) is a bijection on 1..=n of length n.
/// Total: never panics, any slice is a valid input.
pub fn validate_permutation(mapping: &[usize], n: usize) -> bool {
    if mapping.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &j in mapping {
        if j == 0 || j > n || seen[j - 1] {
            return false;
        }
        seen[j - 1] = true;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Greedy,
    Hungarian,
    BruteForce,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Greedy => "greedy",
            Method::Hungarian => "hungarian",
            Method::BruteForce => "brute_force",
        })
    }
}

/// A permutation, its assignment value, and which solver produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentResult {
    pub perm: Permutation,
    pub value: f64,
    pub method: Method,
}

impl AssignmentResult {
    /// Check the value/permutation consistency contract (1e-9 absolute).
    pub fn consistent_with(&self, m: &CostMatrix) -> bool {
        match assignment_value(m, &self.perm) {
            Ok(v) => (v - self.value).abs() <= 1e-9,
            Err(_) => false,
        }
    }
}

/// S(π) = Σ_i m[i][π(i)].
pub fn assignment_value(m: &CostMatrix, p: &Permutation) -> Result<f64, Error> {
    if p.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            got: p.len(),
        });
    }
    let mut sum = 0.0;
    for i in 0..m.n() {
        sum += m.get(i, p.apply(i));
    }
    Ok(sum)
}
