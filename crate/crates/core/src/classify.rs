//! Spherical type recognition, basic subsets, splittings and the
//! basic-matching compatibility filter.

use std::collections::HashSet;
use std::fmt;

use crate::coxsys::{irreducible_components, CoxeterMatrix, GeneratorSubset, Label};
use crate::error::{Error, Result};

impl serde::Serialize for SphericalType {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// Classical type of an irreducible spherical Coxeter system.
///
/// `I2(3)` and `I2(4)` never occur: they are `A(2)` and `B(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SphericalType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl SphericalType {
    /// Normalizing constructor for dihedral types.
    pub fn dihedral(m: u32) -> SphericalType {
        match m {
            3 => SphericalType::A(2),
            4 => SphericalType::B(2),
            m => SphericalType::I2(m),
        }
    }

    pub fn rank(self) -> usize {
        use SphericalType::*;
        match self {
            A(n) | B(n) | D(n) => n,
            E6 => 6,
            E7 => 7,
            E8 => 8,
            F4 | H4 => 4,
            H3 => 3,
            I2(_) => 2,
        }
    }

    pub fn group_order(self) -> u128 {
        use SphericalType::*;
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            A(n) => fact(n + 1),
            B(n) => (1u128 << n) * fact(n),
            D(n) => (1u128 << (n - 1)) * fact(n),
            E6 => 51_840,
            E7 => 2_903_040,
            E8 => 696_729_600,
            F4 => 1_152,
            H3 => 120,
            H4 => 14_400,
            I2(m) => 2 * m as u128,
        }
    }

    /// Dihedral parameter `m` for rank-2 types.
    pub fn dihedral_param(self) -> Option<u32> {
        match self {
            SphericalType::A(2) => Some(3),
            SphericalType::B(2) => Some(4),
            SphericalType::I2(m) => Some(m),
            _ => None,
        }
    }

    /// `n` when this is `D_n` with `n` odd; `A3` counts as `D3`.
    pub fn odd_d_rank(self) -> Option<usize> {
        match self {
            SphericalType::A(3) => Some(3),
            SphericalType::D(n) if n % 2 == 1 => Some(n),
            _ => None,
        }
    }

    /// `n` when this is `B_n` with `n >= 3` odd.
    pub fn odd_b_rank(self) -> Option<usize> {
        match self {
            SphericalType::B(n) if n >= 3 && n % 2 == 1 => Some(n),
            _ => None,
        }
    }

    /// Whether the longest element is central (the opposition involution is trivial).
    pub fn longest_is_central(self) -> bool {
        use SphericalType::*;
        match self {
            A(n) => n == 1,
            D(n) => n % 2 == 0,
            E6 => false,
            I2(m) => m % 2 == 0,
            _ => true,
        }
    }
}

impl fmt::Display for SphericalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SphericalType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => write!(f, "E6"),
            E7 => write!(f, "E7"),
            E8 => write!(f, "E8"),
            F4 => write!(f, "F4"),
            H3 => write!(f, "H3"),
            H4 => write!(f, "H4"),
            I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A recognized irreducible spherical subsystem together with its generators
/// listed in Bourbaki order (`A_n` along the path, `B_n`/`F4` with the
/// 4-labeled edge placed as in the standard diagram, `D_n` with the fork
/// leaves last, `E_n` as `1-3-4-5-..` with `2` attached to `4`, `H_n` with
/// the 5-labeled edge first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub ty: SphericalType,
    pub layout: Vec<usize>,
}

impl Recognized {
    /// The permutation of the subset induced by conjugation with the longest
    /// element, as pairs `(j, π(j))` over the layout.
    pub fn opposition(&self) -> Vec<(usize, usize)> {
        let l = &self.layout;
        let n = l.len();
        let mut image: Vec<usize> = (0..n).collect();
        match self.ty {
            SphericalType::A(_) => image.reverse(),
            SphericalType::I2(m) if m % 2 == 1 => image.reverse(),
            SphericalType::D(k) if k % 2 == 1 => image.swap(n - 2, n - 1),
            SphericalType::E6 => {
                image.swap(0, 5);
                image.swap(2, 4);
            }
            _ => {}
        }
        (0..n).map(|i| (l[i], l[image[i]])).collect()
    }

    /// Vertices at the split end: the fork leaves of `D_n`, the ends of `A3`,
    /// or both generators of a dihedral type.
    pub fn fork(&self) -> Option<(usize, usize)> {
        let l = &self.layout;
        match self.ty {
            SphericalType::D(n) => Some((l[n - 2], l[n - 1])),
            SphericalType::A(3) => Some((l[0], l[2])),
            t if t.dihedral_param().is_some() => Some((l[0], l[1])),
            _ => None,
        }
    }
}

/// Recognizes an irreducible subset. `Ok(None)` means nonspherical.
pub fn recognize(m: &CoxeterMatrix, component: GeneratorSubset) -> Result<Option<Recognized>> {
    if !m.is_irreducible_subset(component) {
        return Err(Error::NotIrreducible);
    }
    Ok(recognize_connected(m, component))
}

fn recognize_connected(m: &CoxeterMatrix, comp: GeneratorSubset) -> Option<Recognized> {
    let verts: Vec<usize> = comp.iter().collect();
    let n = verts.len();
    if n == 1 {
        return Some(Recognized {
            ty: SphericalType::A(1),
            layout: verts,
        });
    }
    let mut edges = Vec::new();
    for (a, &u) in verts.iter().enumerate() {
        for &v in &verts[a + 1..] {
            match m.get(u, v) {
                Label::Infinity => return None,
                Label::Finite(k) if k >= 3 => edges.push((u, v, k)),
                _ => {}
            }
        }
    }
    if n == 2 {
        let (u, v, k) = edges[0];
        return Some(Recognized {
            ty: SphericalType::dihedral(k),
            layout: vec![u, v],
        });
    }
    if edges.len() != n - 1 || edges.iter().any(|e| e.2 >= 6) {
        return None;
    }
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 >= 4).collect();
    if heavy.len() > 1 {
        return None;
    }
    let nbrs = |u: usize| -> Vec<usize> {
        verts
            .iter()
            .copied()
            .filter(|&v| v != u && m.get(u, v).is_dynkin_edge())
            .collect()
    };
    let degree = |u: usize| nbrs(u).len();
    let branch: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) >= 3).collect();
    // walk outward from `from` (a neighbor of `prev`) until a leaf
    let walk = |prev: usize, from: usize| -> Vec<usize> {
        let mut arm = vec![from];
        let (mut p, mut c) = (prev, from);
        loop {
            let next: Vec<usize> = nbrs(c).into_iter().filter(|&x| x != p).collect();
            match next.as_slice() {
                [] => return arm,
                [x] => {
                    arm.push(*x);
                    p = c;
                    c = *x;
                }
                _ => return arm,
            }
        }
    };
    if branch.is_empty() {
        let end = *verts.iter().find(|&&v| degree(v) == 1)?;
        let mut path = vec![end];
        path.extend(walk(end, nbrs(end)[0]));
        if path.len() != n {
            return None;
        }
        let Some(&&(hu, hv, hk)) = heavy.first() else {
            return Some(Recognized {
                ty: SphericalType::A(n),
                layout: path,
            });
        };
        let pos = |x: usize| path.iter().position(|&p| p == x).unwrap();
        let k = pos(hu).min(pos(hv));
        let at_start = k == 0;
        let at_end = k == n - 2;
        match hk {
            4 if at_start || at_end => {
                if at_start {
                    path.reverse();
                }
                Some(Recognized {
                    ty: SphericalType::B(n),
                    layout: path,
                })
            }
            4 if n == 4 && k == 1 => Some(Recognized {
                ty: SphericalType::F4,
                layout: path,
            }),
            5 if (at_start || at_end) && (n == 3 || n == 4) => {
                if at_end {
                    path.reverse();
                }
                let ty = if n == 3 { SphericalType::H3 } else { SphericalType::H4 };
                Some(Recognized { ty, layout: path })
            }
            _ => None,
        }
    } else {
        if branch.len() != 1 || !heavy.is_empty() {
            return None;
        }
        let c = branch[0];
        let around = nbrs(c);
        if around.len() != 3 {
            return None;
        }
        let mut arms: Vec<Vec<usize>> = around.iter().map(|&a| walk(c, a)).collect();
        if arms.iter().map(Vec::len).sum::<usize>() + 1 != n {
            return None;
        }
        arms.sort_by_key(Vec::len);
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
        match lens.as_slice() {
            [1, 1, k] => {
                let mut layout: Vec<usize> = arms[2].iter().rev().copied().collect();
                layout.push(c);
                layout.push(arms[0][0]);
                layout.push(arms[1][0]);
                let _ = k;
                Some(Recognized {
                    ty: SphericalType::D(n),
                    layout,
                })
            }
            [1, 2, k @ 2..=4] => {
                let ty = match k {
                    2 => SphericalType::E6,
                    3 => SphericalType::E7,
                    _ => SphericalType::E8,
                };
                let mut layout = vec![arms[1][1], arms[0][0], arms[1][0], c];
                layout.extend(arms[2].iter().copied());
                Some(Recognized { ty, layout })
            }
            _ => None,
        }
    }
}

/// Classical type of one irreducible component; `None` when it is infinite.
pub fn spherical_type(m: &CoxeterMatrix, component: GeneratorSubset) -> Result<Option<SphericalType>> {
    Ok(recognize(m, component)?.map(|r| r.ty))
}

/// Types of all irreducible components, or `None` if some component is infinite.
pub fn component_types(m: &CoxeterMatrix) -> Option<Vec<SphericalType>> {
    irreducible_components(m)
        .into_iter()
        .map(|c| recognize_connected(m, c).map(|r| r.ty))
        .collect()
}

pub fn is_spherical(m: &CoxeterMatrix) -> bool {
    component_types(m).is_some()
}

/// Whether the standard parabolic on `t` is finite.
pub fn is_spherical_subset(m: &CoxeterMatrix, t: GeneratorSubset) -> bool {
    m.components_by(t, Label::is_dynkin_edge)
        .into_iter()
        .all(|c| recognize_connected(m, c).is_some())
}

/// Order of the group when finite.
pub fn group_order(m: &CoxeterMatrix) -> Option<u128> {
    component_types(m).map(|ts| ts.iter().map(|t| t.group_order()).product())
}

/// A maximal irreducible noncyclic spherical subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicSubset {
    pub members: GeneratorSubset,
    pub ty: SphericalType,
}

/// All irreducible spherical subsets with at least two generators, each
/// with its recognition. Grown one Dynkin neighbour at a time; a subset
/// that fails to be spherical is not extended further.
pub fn irreducible_spherical_subsets(m: &CoxeterMatrix) -> Vec<(GeneratorSubset, Recognized)> {
    let n = m.rank();
    let mut seen: HashSet<GeneratorSubset> = HashSet::new();
    let mut frontier: Vec<GeneratorSubset> = (0..n).map(GeneratorSubset::singleton).collect();
    let mut out = Vec::new();
    while let Some(set) = frontier.pop() {
        for u in set.iter() {
            for v in 0..n {
                if set.contains(v) || !m.get(u, v).is_dynkin_edge() {
                    continue;
                }
                let bigger = set.with(v);
                if !seen.insert(bigger) {
                    continue;
                }
                if let Some(r) = recognize_connected(m, bigger) {
                    out.push((bigger, r));
                    frontier.push(bigger);
                }
            }
        }
    }
    out.sort_by_key(|(s, _)| s.bits());
    out
}

pub fn basic_subsets(m: &CoxeterMatrix) -> Vec<BasicSubset> {
    let all = irreducible_spherical_subsets(m);
    all.iter()
        .filter(|(s, _)| !all.iter().any(|(t, _)| t != s && s.is_subset(*t)))
        .map(|(s, r)| BasicSubset { members: *s, ty: r.ty })
        .collect()
}

/// Whether an irreducible system is directly decomposable: types `B_{2k+1}`,
/// `I2(4k+2)`, `E7`, `H3`.
pub fn is_directly_decomposable_irreducible(m: &CoxeterMatrix) -> Result<bool> {
    let Some(r) = recognize(m, m.all())? else {
        return Ok(false);
    };
    Ok(match r.ty {
        SphericalType::B(n) => n >= 3 && n % 2 == 1,
        SphericalType::I2(k) => k >= 6 && k % 4 == 2,
        SphericalType::E7 | SphericalType::H3 => true,
        _ => false,
    })
}

/// An amalgam `W = W_{S1} *_{W_T} W_{S2}` visible on the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub s1: GeneratorSubset,
    pub s2: GeneratorSubset,
    pub t: GeneratorSubset,
}

/// All two-part visible splittings over spherical `T`; each unordered pair
/// appears once, with `S1` holding the smallest generator of `S \ T`.
pub fn visible_splittings(m: &CoxeterMatrix) -> Vec<Splitting> {
    let all = m.all();
    let mut out = Vec::new();
    for t in all.subsets() {
        let rest = all.difference(t);
        if rest.len() < 2 || !is_spherical_subset(m, t) {
            continue;
        }
        let comps = m.components_by(rest, Label::is_finite);
        if comps.len() < 2 {
            continue;
        }
        let others = &comps[1..];
        for mask in 0u64..(1 << others.len()) - 1 {
            let mut p = comps[0];
            for (k, c) in others.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    p = p.union(*c);
                }
            }
            out.push(Splitting {
                s1: t.union(p),
                s2: t.union(rest.difference(p)),
                t,
            });
        }
    }
    out
}

/// Outcome of the basic-matching filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchResult {
    Compatible,
    /// No perfect matching; `witness` is an unmatched basic type, found on
    /// the first system when `first` is true.
    Incompatible {
        witness: SphericalType,
        first: bool,
    },
}

/// Whether two basic types may correspond under an isomorphism.
pub fn types_may_match(a: SphericalType, b: SphericalType) -> bool {
    if a == b {
        return true;
    }
    let pair = |x: SphericalType, y: SphericalType| {
        if let (Some(d), Some(bb)) = (x.odd_d_rank(), y.odd_b_rank()) {
            return d == bb;
        }
        if let (Some(p), Some(q)) = (x.dihedral_param(), y.dihedral_param()) {
            return p % 2 == 1 && q == 2 * p;
        }
        false
    };
    pair(a, b) || pair(b, a)
}

fn max_matching(left: &[SphericalType], right: &[SphericalType]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    fn augment(
        u: usize,
        left: &[SphericalType],
        right: &[SphericalType],
        seen: &mut [bool],
        ml: &mut [Option<usize>],
        mr: &mut [Option<usize>],
    ) -> bool {
        for v in 0..right.len() {
            if seen[v] || !types_may_match(left[u], right[v]) {
                continue;
            }
            seen[v] = true;
            if mr[v].is_none_or(|w| augment(w, left, right, seen, ml, mr)) {
                ml[u] = Some(v);
                mr[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut ml = vec![None; left.len()];
    let mut mr = vec![None; right.len()];
    for u in 0..left.len() {
        let mut seen = vec![false; right.len()];
        augment(u, left, right, &mut seen, &mut ml, &mut mr);
    }
    (ml, mr)
}

/// Necessary condition for isomorphic groups: the basic types of the two
/// systems admit a bijection pairing equal types, `D_{2k+1}` with
/// `B_{2k+1}`, or `I2(2k+1)` with `I2(4k+2)`.
pub fn matching_filter(m1: &CoxeterMatrix, m2: &CoxeterMatrix) -> MatchResult {
    let mut left: Vec<SphericalType> = basic_subsets(m1).into_iter().map(|b| b.ty).collect();
    let mut right: Vec<SphericalType> = basic_subsets(m2).into_iter().map(|b| b.ty).collect();
    left.sort();
    right.sort();
    let (ml, mr) = max_matching(&left, &right);
    if let Some(i) = ml.iter().position(Option::is_none) {
        return MatchResult::Incompatible {
            witness: left[i],
            first: true,
        };
    }
    if let Some(j) = mr.iter().position(Option::is_none) {
        return MatchResult::Incompatible {
            witness: right[j],
            first: false,
        };
    }
    MatchResult::Compatible
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::{dihedral, disjoint_union, triangle};

    fn fin(m: u32) -> Label {
        Label::Finite(m)
    }

    pub(crate) fn linear(labels: &[u32]) -> CoxeterMatrix {
        CoxeterMatrix::from_fn(
            labels.len() + 1,
            |i, j| {
                if j == i + 1 {
                    fin(labels[i])
                } else {
                    fin(2)
                }
            },
        )
        .unwrap()
    }

    fn set(xs: &[usize]) -> GeneratorSubset {
        xs.iter().copied().collect()
    }

    #[test]
    fn recognizes_b5_and_dihedral() {
        let b5 = linear(&[4, 3, 3, 3]);
        let t = spherical_type(&b5, b5.all()).unwrap().unwrap();
        assert_eq!(t, SphericalType::B(5));
        assert_eq!(t.group_order(), 32 * 120);
        let i6 = dihedral(fin(6));
        let t = spherical_type(&i6, i6.all()).unwrap().unwrap();
        assert_eq!(t, SphericalType::I2(6));
        assert_eq!(t.group_order(), 12);
        let inf = dihedral(Label::Infinity);
        assert_eq!(spherical_type(&inf, inf.all()).unwrap(), None);
    }

    #[test]
    fn not_irreducible_errors() {
        let t = triangle(fin(2), fin(2), fin(2));
        assert_eq!(spherical_type(&t, t.all()), Err(Error::NotIrreducible));
        assert_eq!(is_directly_decomposable_irreducible(&t), Err(Error::NotIrreducible));
    }

    #[test]
    fn recognizes_exceptional_and_branched() {
        let cases: Vec<(CoxeterMatrix, SphericalType)> = vec![
            (linear(&[3, 3]), SphericalType::A(3)),
            (linear(&[3, 4, 3]), SphericalType::F4),
            (linear(&[5, 3]), SphericalType::H3),
            (linear(&[3, 3, 5]), SphericalType::H4),
            (linear(&[3, 3, 4]), SphericalType::B(4)),
        ];
        for (m, ty) in cases {
            assert_eq!(spherical_type(&m, m.all()).unwrap(), Some(ty), "{m}");
        }
        assert_eq!(
            spherical_type(&linear(&[3, 5, 3]), linear(&[3, 5, 3]).all()).unwrap(),
            None
        );
        assert_eq!(
            spherical_type(&linear(&[4, 3, 4]), linear(&[4, 3, 4]).all()).unwrap(),
            None
        );
        // branched: centre 0, arms of given lengths
        let branched = |arms: &[usize]| {
            let n = 1 + arms.iter().sum::<usize>();
            let mut edges = Vec::new();
            let mut next = 1;
            for &len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            CoxeterMatrix::from_fn(n, |i, j| if edges.contains(&(i, j)) { fin(3) } else { fin(2) }).unwrap()
        };
        let expect = [
            (vec![1, 1, 1], Some(SphericalType::D(4))),
            (vec![1, 1, 3], Some(SphericalType::D(6))),
            (vec![1, 2, 2], Some(SphericalType::E6)),
            (vec![2, 1, 3], Some(SphericalType::E7)),
            (vec![4, 2, 1], Some(SphericalType::E8)),
            (vec![2, 2, 2], None),
            (vec![1, 2, 5], None),
        ];
        for (arms, ty) in expect {
            let m = branched(&arms);
            assert_eq!(spherical_type(&m, m.all()).unwrap(), ty, "{arms:?}");
        }
        // cycle
        let cyc =
            CoxeterMatrix::from_fn(4, |i, j| if j == i + 1 || (i, j) == (0, 3) { fin(3) } else { fin(2) }).unwrap();
        assert_eq!(spherical_type(&cyc, cyc.all()).unwrap(), None);
    }

    #[test]
    fn sphericity_and_orders() {
        for l in 1..6u32 {
            let t = triangle(fin(2 * l + 1), fin(2), fin(2));
            assert!(is_spherical(&t));
            assert_eq!(group_order(&t), Some(8 * l as u128 + 4));
        }
        let empty = CoxeterMatrix::from_fn(0, |_, _| fin(2)).unwrap();
        assert!(is_spherical(&empty));
        assert_eq!(group_order(&empty), Some(1));
        assert!(!is_spherical(&triangle(fin(2), fin(3), fin(6))));
    }

    #[test]
    fn basic_subsets_examples() {
        let t = triangle(fin(5), fin(2), fin(2));
        let b = basic_subsets(&t);
        assert_eq!(
            b,
            vec![BasicSubset {
                members: set(&[0, 1]),
                ty: SphericalType::I2(5)
            }]
        );
        let star = triangle(fin(6), fin(10), Label::Infinity);
        let mut tys: Vec<SphericalType> = basic_subsets(&star).into_iter().map(|b| b.ty).collect();
        tys.sort();
        assert_eq!(tys, vec![SphericalType::I2(6), SphericalType::I2(10)]);
        assert!(basic_subsets(&triangle(fin(2), fin(2), fin(2))).is_empty());
    }

    #[test]
    fn direct_decomposability() {
        assert!(is_directly_decomposable_irreducible(&dihedral(fin(6))).unwrap());
        assert!(!is_directly_decomposable_irreducible(&dihedral(fin(5))).unwrap());
        assert!(!is_directly_decomposable_irreducible(&linear(&[3, 3])).unwrap());
        assert!(is_directly_decomposable_irreducible(&linear(&[4, 3])).unwrap());
        assert!(!is_directly_decomposable_irreducible(&linear(&[4, 3, 3])).unwrap());
        assert!(is_directly_decomposable_irreducible(&linear(&[5, 3])).unwrap());
    }

    #[test]
    fn splittings_examples() {
        let t = triangle(fin(5), fin(7), Label::Infinity);
        assert_eq!(
            visible_splittings(&t),
            vec![Splitting {
                s1: set(&[0, 1]),
                s2: set(&[1, 2]),
                t: set(&[1])
            }]
        );
        assert!(visible_splittings(&triangle(fin(3), fin(3), fin(3))).is_empty());
        // x=0, y=1, z=2, w=3 with m(x,z)=2k+1, m(x,y)=2l+1, m(x,w)=m(z,w)=2
        let m = CoxeterMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 2) => fin(3),
            (0, 1) => fin(5),
            (0, 3) | (2, 3) => fin(2),
            _ => Label::Infinity,
        })
        .unwrap();
        let sp = visible_splittings(&m);
        assert!(sp.contains(&Splitting {
            s1: set(&[0, 1, 3]),
            s2: set(&[0, 2, 3]),
            t: set(&[0, 3])
        }));
        for s in &sp {
            assert_eq!(s.s1.union(s.s2), m.all());
            assert_eq!(s.s1.intersection(s.s2), s.t);
        }
    }

    #[test]
    fn matching_examples() {
        assert_eq!(
            matching_filter(&dihedral(fin(10)), &triangle(fin(5), fin(2), fin(2))),
            MatchResult::Compatible
        );
        let r = matching_filter(&triangle(fin(3), fin(3), fin(3)), &triangle(fin(2), fin(4), fin(4)));
        assert!(matches!(r, MatchResult::Incompatible { .. }));
        let m = disjoint_union(&dihedral(fin(6)), &linear(&[4, 3, 3, 3])).unwrap();
        assert_eq!(matching_filter(&m, &m), MatchResult::Compatible);
        assert!(types_may_match(SphericalType::A(3), SphericalType::B(3)));
        assert!(types_may_match(SphericalType::A(2), SphericalType::I2(6)));
        assert!(!types_may_match(SphericalType::I2(5), SphericalType::I2(6)));
    }

    #[test]
    fn opposition_involutions() {
        let a4 = linear(&[3, 3, 3]);
        let r = recognize(&a4, a4.all()).unwrap().unwrap();
        assert_eq!(r.opposition(), vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
        let b3 = linear(&[4, 3]);
        let r = recognize(&b3, b3.all()).unwrap().unwrap();
        assert!(r.opposition().iter().all(|(a, b)| a == b));
        assert_eq!(r.layout, vec![2, 1, 0]);
    }
}
