//! Coxeter matrices, complete Coxeter graphs and their serialized form.

mod canon;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{are_graph_isomorphic, canonical_form, canonical_labeling, GalaxyVertex};

/// Largest rank a [`CoxeterMatrix`] may have; subsets are stored as `u64` bitmasks.
pub const MAX_RANK: usize = 64;

/// An entry of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// Diagonal entries.
    One,
    /// A finite order `m >= 2`.
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn is_finite(self) -> bool {
        !matches!(self, Label::Infinity)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinity)
    }

    /// The finite order, if any. `One` yields `Some(1)`.
    pub fn order(self) -> Option<u32> {
        match self {
            Label::One => Some(1),
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    /// Serialized integer: 0 encodes infinity.
    pub fn to_code(self) -> u32 {
        match self {
            Label::One => 1,
            Label::Finite(m) => m,
            Label::Infinity => 0,
        }
    }

    /// Total order key used by canonical forms; infinity sorts last.
    pub(crate) fn sort_key(self) -> u32 {
        match self {
            Label::One => 1,
            Label::Finite(m) => m,
            Label::Infinity => u32::MAX,
        }
    }

    /// True for labels that join two vertices in the Coxeter–Dynkin diagram.
    pub fn is_dynkin_edge(self) -> bool {
        match self {
            Label::Finite(m) => m >= 3,
            Label::Infinity => true,
            Label::One => false,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::One => write!(f, "1"),
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => write!(f, "∞"),
        }
    }
}

/// A set of generator indices, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSubset(u64);

impl GeneratorSubset {
    pub const EMPTY: GeneratorSubset = GeneratorSubset(0);

    pub fn full(rank: usize) -> Self {
        if rank == 64 {
            GeneratorSubset(u64::MAX)
        } else {
            GeneratorSubset((1u64 << rank) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        GeneratorSubset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        GeneratorSubset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> Self {
        GeneratorSubset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        GeneratorSubset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GeneratorSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GeneratorSubset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(GeneratorSubset(cur))
        })
    }
}

impl FromIterator<usize> for GeneratorSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = GeneratorSubset::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Serialize for GeneratorSubset {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for GeneratorSubset {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(de)?;
        if let Some(bad) = idx.iter().find(|&&i| i >= MAX_RANK) {
            return Err(serde::de::Error::custom(format!("generator index {bad} out of range")));
        }
        Ok(idx.into_iter().collect())
    }
}

/// A Coxeter matrix together with generator names.
///
/// Values are immutable once built; every constructor validates symmetry,
/// the diagonal and the off-diagonal range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    generators: Vec<String>,
    entries: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct SystemFile {
    generators: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

impl CoxeterMatrix {
    /// Builds a matrix from generator names and a full grid of labels.
    pub fn new(generators: Vec<String>, grid: Vec<Vec<Label>>) -> Result<Self> {
        let n = generators.len();
        if n > MAX_RANK {
            return Err(Error::InvalidMatrix(format!("rank {n} exceeds {MAX_RANK}")));
        }
        if grid.len() != n || grid.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "expected a {n}x{n} matrix for {n} generators"
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if generators[i] == generators[j] {
                    return Err(Error::InvalidMatrix(format!(
                        "duplicate generator name {:?}",
                        generators[i]
                    )));
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in grid.iter().enumerate() {
            for (j, &label) in row.iter().enumerate() {
                if i == j {
                    if label != Label::One {
                        return Err(Error::InvalidMatrix(format!("diagonal entry ({i},{i}) must be 1")));
                    }
                } else {
                    match label {
                        Label::One | Label::Finite(0..=1) => {
                            return Err(Error::InvalidMatrix(format!(
                                "off-diagonal entry ({i},{j}) must be >= 2 or infinity"
                            )))
                        }
                        _ => {}
                    }
                    if grid[j][i] != label {
                        return Err(Error::InvalidMatrix(format!("matrix is not symmetric at ({i},{j})")));
                    }
                }
                entries.push(label);
            }
        }
        Ok(CoxeterMatrix { generators, entries })
    }

    /// Builds a rank-`n` matrix with generators `s0..s{n-1}` and off-diagonal
    /// labels `f(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Label) -> Result<Self> {
        let mut grid = vec![vec![Label::One; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let l = f(i, j);
                grid[i][j] = l;
                grid[j][i] = l;
            }
        }
        Self::new(default_names(n), grid)
    }

    /// Builds a matrix from serialized integer codes (0 = infinity).
    pub fn from_codes(generators: Vec<String>, codes: &[Vec<i64>]) -> Result<Self> {
        let grid = codes
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| decode_label(c, i == j))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(generators, grid)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Label {
        self.entries[i * self.rank() + j]
    }

    pub fn all(&self) -> GeneratorSubset {
        GeneratorSubset::full(self.rank())
    }

    /// Off-diagonal labels, row-major over `i < j`.
    pub fn edge_labels(&self) -> Vec<Label> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Sorted multiset of off-diagonal labels.
    pub fn label_multiset(&self) -> Vec<Label> {
        let mut labels = self.edge_labels();
        labels.sort_by_key(|l| l.sort_key());
        labels
    }

    /// Restriction to `t` (standard parabolic subsystem), names preserved.
    pub fn subsystem(&self, t: GeneratorSubset) -> CoxeterMatrix {
        let idx: Vec<usize> = t.iter().filter(|&i| i < self.rank()).collect();
        self.select(&idx)
    }

    /// Matrix on the listed generators in the listed order.
    pub(crate) fn select(&self, idx: &[usize]) -> CoxeterMatrix {
        let n = self.rank();
        let mut entries = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                entries.push(self.entries[i * n + j]);
            }
        }
        CoxeterMatrix {
            generators: idx.iter().map(|&i| self.generators[i].clone()).collect(),
            entries,
        }
    }

    /// The system with generators reordered: new generator `k` is old generator `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<CoxeterMatrix> {
        let n = self.rank();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::InvalidMatrix("permutation has the wrong length".into()));
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidMatrix("not a permutation".into()));
            }
        }
        Ok(self.select(perm))
    }

    pub fn with_names(&self, generators: Vec<String>) -> Result<CoxeterMatrix> {
        let n = self.rank();
        let grid = (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect();
        CoxeterMatrix::new(generators, grid)
    }

    /// `X^⊥`: generators outside `x` commuting with every member of `x`.
    pub fn perp(&self, x: GeneratorSubset) -> GeneratorSubset {
        (0..self.rank())
            .filter(|&s| !x.contains(s) && x.iter().all(|u| self.get(s, u) == Label::Finite(2)))
            .collect()
    }

    /// Connected components of the graph on `within` whose edges satisfy `edge`.
    pub(crate) fn components_by(&self, within: GeneratorSubset, edge: impl Fn(Label) -> bool) -> Vec<GeneratorSubset> {
        let mut remaining = within;
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = GeneratorSubset::singleton(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in remaining.difference(comp).iter() {
                    if edge(self.get(u, v)) {
                        comp.insert(v);
                        stack.push(v);
                    }
                }
            }
            remaining = remaining.difference(comp);
            out.push(comp);
        }
        out
    }

    /// True when `t` spans a connected Coxeter–Dynkin subdiagram.
    pub fn is_irreducible_subset(&self, t: GeneratorSubset) -> bool {
        !t.is_empty() && self.components_by(t, Label::is_dynkin_edge).len() == 1
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let n = self.rank();
        let file = SystemFile {
            generators: self.generators.clone(),
            matrix: (0..n)
                .map(|i| (0..n).map(|j| self.get(i, j).to_code() as i64).collect())
                .collect(),
        };
        serde_json::to_value(file).expect("system serializes")
    }

    /// Compact JSON in the interchange format, one row per line.
    pub fn to_json(&self) -> String {
        let names = serde_json::to_string(&self.generators).expect("names serialize");
        let n = self.rank();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let cells: Vec<String> = (0..n).map(|j| self.get(i, j).to_code().to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        if rows.is_empty() {
            return format!("{{\"generators\":{names},\"matrix\":[]}}");
        }
        format!("{{\"generators\":{names},\"matrix\":[\n  {}\n]}}", rows.join(",\n  "))
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let mut first = true;
        for i in 0..n {
            for j in i + 1..n {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{}-{}:{}", self.name(i), self.name(j), self.get(i, j))?;
            }
        }
        if n == 1 {
            write!(f, "{}", self.name(0))?;
        }
        Ok(())
    }
}

impl Serialize for CoxeterMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CoxeterMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let file = SystemFile::deserialize(de)?;
        system_from_value(file).map_err(serde::de::Error::custom)
    }
}

fn decode_label(code: i64, diagonal: bool) -> Result<Label> {
    match (diagonal, code) {
        (true, 1) => Ok(Label::One),
        (true, c) => Err(Error::InvalidMatrix(format!("diagonal entry {c} must be 1"))),
        (false, 0) => Ok(Label::Infinity),
        (false, c) if (2..=u32::MAX as i64).contains(&c) => Ok(Label::Finite(c as u32)),
        (false, c) => Err(Error::InvalidMatrix(format!("off-diagonal label {c} is not >= 2"))),
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

/// Parses the JSON interchange format `{"generators":[..],"matrix":[[..]..]}`.
pub fn parse_system(input: &str) -> Result<CoxeterMatrix> {
    let file: SystemFile = serde_json::from_str(input).map_err(|e| Error::MalformedInput(e.to_string()))?;
    system_from_value(file)
}

pub fn parse_system_value(value: &serde_json::Value) -> Result<CoxeterMatrix> {
    let file: SystemFile = serde_json::from_value(value.clone()).map_err(|e| Error::MalformedInput(e.to_string()))?;
    system_from_value(file)
}

fn system_from_value(file: SystemFile) -> Result<CoxeterMatrix> {
    if file.matrix.len() != file.generators.len() {
        return Err(Error::InvalidMatrix(format!(
            "{} generators but {} matrix rows",
            file.generators.len(),
            file.matrix.len()
        )));
    }
    CoxeterMatrix::from_codes(file.generators, &file.matrix)
}

/// Partition of the generators into connected components of the Coxeter–Dynkin diagram.
pub fn irreducible_components(m: &CoxeterMatrix) -> Vec<GeneratorSubset> {
    m.components_by(m.all(), Label::is_dynkin_edge)
}

pub fn subsystem(m: &CoxeterMatrix, t: GeneratorSubset) -> CoxeterMatrix {
    m.subsystem(t)
}

/// `r` such that the abelianization is `C_2^r`: the number of components of
/// the graph joining generators whose label is odd.
pub fn abelianization_rank(m: &CoxeterMatrix) -> usize {
    m.components_by(m.all(), Label::is_odd).len()
}

/// Triangle system with labels `m(s0,s1)=p`, `m(s1,s2)=q`, `m(s0,s2)=r`.
pub fn triangle(p: Label, q: Label, r: Label) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 1) => p,
        (1, 2) => q,
        _ => r,
    })
    .expect("triangle labels are valid")
}

/// Rank-2 system with label `m`.
pub fn dihedral(m: Label) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(2, |_, _| m).expect("dihedral label is valid")
}

/// Disjoint union: labels between the two blocks are 2.
pub fn disjoint_union(a: &CoxeterMatrix, b: &CoxeterMatrix) -> Result<CoxeterMatrix> {
    let (na, nb) = (a.rank(), b.rank());
    let n = na + nb;
    let mut grid = vec![vec![Label::Finite(2); n]; n];
    for i in 0..n {
        for j in 0..n {
            grid[i][j] = match (i < na, j < na) {
                (true, true) => a.get(i, j),
                (false, false) => b.get(i - na, j - na),
                _ => Label::Finite(2),
            };
        }
    }
    let mut names: Vec<String> = a.generators().to_vec();
    for name in b.generators() {
        let mut candidate = name.clone();
        while names.contains(&candidate) {
            candidate.push('\'');
        }
        names.push(candidate);
    }
    CoxeterMatrix::new(names, grid)
}
