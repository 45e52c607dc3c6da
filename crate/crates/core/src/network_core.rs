//! Reaction networks and their deficiency.
//!
//! A network is stored as a sorted set of directed reactions between
//! [`Vertex`] values. Vertices are general non-negative species combinations,
//! so files with higher molecularity still flow through [`deficiency`]; the
//! random generators only ever produce binary ones.
//!
//! Rank and linkage classes ignore direction: `y -> y'` and `y' -> y`
//! contribute a single undirected edge and a single reaction vector.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::complex_space::{Complex, SpeciesId};
use crate::dsu::DisjointSets;
use crate::rank::{exact_rank, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("reaction {0} has identical source and product")]
    SelfReaction(String),
    #[error("duplicate reaction {0}")]
    DuplicateReaction(String),
    #[error("species S{id} is out of range for n = {n}")]
    SpeciesOutOfRange { n: usize, id: u32 },
    #[error("complex index {idx} is out of range for n = {n}")]
    IndexOutOfRange { n: usize, idx: usize },
    #[error("network is not paired")]
    NotPaired,
}

/// A vertex of the reaction graph: a non-negative integer combination of
/// species, kept as `(species, count)` terms sorted by species with `count > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vertex {
    terms: Vec<(SpeciesId, u32)>,
}

impl Vertex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a vertex from arbitrary terms; repeated species are summed and
    /// zero counts dropped.
    pub fn from_terms<I: IntoIterator<Item = (SpeciesId, u32)>>(terms: I) -> Self {
        let mut acc: BTreeMap<SpeciesId, u32> = BTreeMap::new();
        for (s, c) in terms {
            *acc.entry(s).or_default() += c;
        }
        Self {
            terms: acc.into_iter().filter(|&(_, c)| c > 0).collect(),
        }
    }

    pub fn terms(&self) -> &[(SpeciesId, u32)] {
        &self.terms
    }

    pub fn molecularity(&self) -> u32 {
        self.terms.iter().map(|&(_, c)| c).sum()
    }

    pub fn is_binary(&self) -> bool {
        self.molecularity() <= 2
    }

    pub fn max_species(&self) -> u32 {
        self.terms.last().map_or(0, |&(s, _)| s.get())
    }

    /// The binary complex this vertex denotes, if its molecularity is <= 2.
    pub fn as_complex(&self) -> Option<Complex> {
        match self.terms.as_slice() {
            [] => Some(Complex::ZeroOrder),
            [(a, 1)] => Some(Complex::Unary(*a)),
            [(a, 2)] => Some(Complex::Binary(*a, *a)),
            [(a, 1), (b, 1)] => Some(Complex::Binary(*a, *b)),
            _ => None,
        }
    }

    fn expanded(&self) -> impl Iterator<Item = SpeciesId> + '_ {
        self.terms
            .iter()
            .flat_map(|&(s, c)| std::iter::repeat_n(s, c as usize))
    }
}

impl From<Complex> for Vertex {
    fn from(c: Complex) -> Self {
        match c {
            Complex::ZeroOrder => Vertex::zero(),
            Complex::Unary(a) => Vertex {
                terms: vec![(a, 1)],
            },
            Complex::Binary(a, b) if a == b => Vertex {
                terms: vec![(a, 2)],
            },
            Complex::Binary(a, b) => Vertex::from_terms([(a, 1), (b, 1)]),
        }
    }
}

/// Canonical order: molecularity, then number of distinct species, then the
/// sorted species multiset. On binary vertices this is exactly the index
/// order of the complex universe.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.molecularity()
            .cmp(&other.molecularity())
            .then(self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c > 1 {
                write!(f, "{c} ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reaction {
    source: Vertex,
    product: Vertex,
}

impl Reaction {
    pub fn new(source: Vertex, product: Vertex) -> Result<Self, NetworkError> {
        if source == product {
            return Err(NetworkError::SelfReaction(format!("{source} -> {product}")));
        }
        Ok(Self { source, product })
    }

    pub fn between(source: Complex, product: Complex) -> Result<Self, NetworkError> {
        Self::new(source.into(), product.into())
    }

    pub fn source(&self) -> &Vertex {
        &self.source
    }

    pub fn product(&self) -> &Vertex {
        &self.product
    }

    pub fn reversed(&self) -> Self {
        Self {
            source: self.product.clone(),
            product: self.source.clone(),
        }
    }

    /// `product - source` as sorted `(species, coefficient)` pairs with
    /// non-zero coefficients.
    pub fn sparse_vector(&self) -> Vec<(SpeciesId, i64)> {
        let mut acc: BTreeMap<SpeciesId, i64> = BTreeMap::new();
        for &(s, c) in &self.product.terms {
            *acc.entry(s).or_default() += c as i64;
        }
        for &(s, c) in &self.source.terms {
            *acc.entry(s).or_default() -= c as i64;
        }
        acc.into_iter().filter(|&(_, v)| v != 0).collect()
    }

    /// `product - source` as a dense vector of length `n`.
    pub fn reaction_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for (s, c) in self.sparse_vector() {
            v[s.coord()] = c;
        }
        v
    }

    fn max_species(&self) -> u32 {
        self.source.max_species().max(self.product.max_species())
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.product)
    }
}

/// A reaction network on species `S1..Sn`.
///
/// Every vertex takes part in at least one reaction; the reaction set has no
/// duplicates. Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReactionNetwork {
    n: usize,
    reactions: Vec<Reaction>,
    vertices: Vec<Vertex>,
    /// `(source, product)` positions in `vertices`, parallel to `reactions`.
    edges: Vec<(usize, usize)>,
}

impl ReactionNetwork {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            reactions: Vec::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = Reaction>>(
        n: usize,
        reactions: I,
    ) -> Result<Self, NetworkError> {
        let mut reactions: Vec<Reaction> = reactions.into_iter().collect();
        for r in &reactions {
            let top = r.max_species();
            if top as usize > n {
                return Err(NetworkError::SpeciesOutOfRange { n, id: top });
            }
        }
        reactions.sort();
        if let Some(w) = reactions.windows(2).find(|w| w[0] == w[1]) {
            return Err(NetworkError::DuplicateReaction(w[0].to_string()));
        }
        Ok(Self::from_sorted(n, reactions))
    }

    fn from_sorted(n: usize, reactions: Vec<Reaction>) -> Self {
        let mut vertices: Vec<Vertex> = reactions
            .iter()
            .flat_map(|r| [r.source.clone(), r.product.clone()])
            .collect();
        vertices.sort();
        vertices.dedup();
        let pos = |v: &Vertex| vertices.binary_search(v).expect("vertex present");
        let edges = reactions
            .iter()
            .map(|r| (pos(&r.source), pos(&r.product)))
            .collect();
        Self {
            n,
            reactions,
            vertices,
            edges,
        }
    }

    /// Network of an undirected graph on the complex universe: each edge
    /// `{u, v}` becomes the reversible pair `u -> v`, `v -> u`.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, NetworkError> {
        let complex = |idx: usize| {
            crate::complex_space::index_to_complex(n, idx)
                .map_err(|_| NetworkError::IndexOutOfRange { n, idx })
        };
        let mut reactions = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            let r = Reaction::between(complex(u)?, complex(v)?)?;
            reactions.push(r.reversed());
            reactions.push(r);
        }
        Self::new(n, reactions)
    }

    pub fn num_species(&self) -> usize {
        self.n
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.reactions.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.vertices.iter().all(Vertex::is_binary)
    }

    pub fn contains(&self, r: &Reaction) -> bool {
        self.reactions.binary_search(r).is_ok()
    }

    /// The same network with every reaction reversed.
    pub fn reversed(&self) -> Self {
        let mut reactions: Vec<Reaction> = self.reactions.iter().map(Reaction::reversed).collect();
        reactions.sort();
        Self::from_sorted(self.n, reactions)
    }

    /// Returns a new network with `r` added.
    pub fn add_reaction(&self, r: Reaction) -> Result<Self, NetworkError> {
        if r.max_species() as usize > self.n {
            return Err(NetworkError::SpeciesOutOfRange {
                n: self.n,
                id: r.max_species(),
            });
        }
        match self.reactions.binary_search(&r) {
            Ok(_) => Err(NetworkError::DuplicateReaction(r.to_string())),
            Err(at) => {
                let mut reactions = self.reactions.clone();
                reactions.insert(at, r);
                Ok(Self::from_sorted(self.n, reactions))
            }
        }
    }

    /// Undirected support: one `(a, b)` with `a < b` per linked vertex pair,
    /// together with the index of a reaction realising it.
    fn undirected_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .map(|(ri, &(s, p))| (s.min(p), s.max(p), ri))
            .collect();
        out.sort_unstable();
        out.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        out
    }

    /// Exact rank of the reaction vectors of the given reactions.
    fn rank_of(&self, reaction_ids: impl IntoIterator<Item = usize>) -> usize {
        let vectors: Vec<Vec<(SpeciesId, i64)>> = reaction_ids
            .into_iter()
            .map(|ri| self.reactions[ri].sparse_vector())
            .collect();
        rank_of_sparse(&vectors)
    }
}

/// Exact rank of a set of sparse vectors, over the species they touch.
pub(crate) fn rank_of_sparse(vectors: &[Vec<(SpeciesId, i64)>]) -> usize {
    let mut species: Vec<SpeciesId> = vectors.iter().flatten().map(|&(s, _)| s).collect();
    species.sort_unstable();
    species.dedup();
    if species.is_empty() {
        return 0;
    }
    let mut m = IntMatrix::zeros(vectors.len(), species.len());
    for (r, v) in vectors.iter().enumerate() {
        for &(s, c) in v {
            let col = species.binary_search(&s).expect("species collected");
            m.set(r, col, c);
        }
    }
    exact_rank(&m)
}

/// Linkage classes as lists of vertex positions (into
/// [`ReactionNetwork::vertices`]), ordered by their smallest vertex.
pub fn connected_components(net: &ReactionNetwork) -> Vec<Vec<usize>> {
    let mut dsu = DisjointSets::new(net.vertices.len());
    for &(s, p) in &net.edges {
        dsu.union(s, p);
    }
    dsu.into_classes()
}

/// The stoichiometric matrix: one column `y' - y` per directed reaction.
pub fn stoich_matrix(net: &ReactionNetwork) -> IntMatrix {
    let mut m = IntMatrix::zeros(net.n, net.reactions.len());
    for (c, r) in net.reactions.iter().enumerate() {
        for (s, v) in r.sparse_vector() {
            m.set(s.coord(), c, v);
        }
    }
    m
}

/// Dimension of the stoichiometric subspace.
pub fn stoich_rank(net: &ReactionNetwork) -> usize {
    net.rank_of(net.undirected_edges().into_iter().map(|(_, _, ri)| ri))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub num_complexes: usize,
    pub rank: usize,
    pub deficiency: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub num_species: usize,
    pub num_reactions: usize,
    pub num_complexes: usize,
    pub num_components: usize,
    pub rank: usize,
    pub deficiency: i64,
    pub components: Vec<ComponentReport>,
    pub is_paired: bool,
}

pub fn deficiency(net: &ReactionNetwork) -> DeficiencyReport {
    let classes = connected_components(net);
    let support = net.undirected_edges();

    let mut slot = vec![0; net.vertices.len()];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            slot[v] = ci;
        }
    }
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    for &(a, _, ri) in &support {
        per_class[slot[a]].push(ri);
    }

    let components: Vec<ComponentReport> = classes
        .iter()
        .zip(&per_class)
        .map(|(class, rs)| {
            let rank = net.rank_of(rs.iter().copied());
            ComponentReport {
                num_complexes: class.len(),
                rank,
                deficiency: class.len() as i64 - 1 - rank as i64,
            }
        })
        .collect();

    let rank = net.rank_of(support.iter().map(|&(_, _, ri)| ri));
    let num_complexes = net.vertices.len();
    DeficiencyReport {
        num_species: net.n,
        num_reactions: net.reactions.len(),
        num_complexes,
        num_components: classes.len(),
        rank,
        deficiency: num_complexes as i64 - classes.len() as i64 - rank as i64,
        is_paired: classes.iter().all(|c| c.len() == 2),
        components,
    }
}

/// Whether every linkage class has exactly two vertices, and the class count.
pub fn is_paired(net: &ReactionNetwork) -> (bool, usize) {
    let classes = connected_components(net);
    (classes.iter().all(|c| c.len() == 2), classes.len())
}

/// Deficiency-zero test for paired networks: one reaction vector per class,
/// checked for linear independence.
pub fn paired_def_zero(net: &ReactionNetwork) -> Result<bool, NetworkError> {
    let classes = connected_components(net);
    if classes.iter().any(|c| c.len() != 2) {
        return Err(NetworkError::NotPaired);
    }
    let mut slot = vec![usize::MAX; net.vertices.len()];
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            slot[v] = ci;
        }
    }
    let mut chosen = vec![usize::MAX; classes.len()];
    for (ri, &(s, _)) in net.edges.iter().enumerate() {
        if chosen[slot[s]] == usize::MAX {
            chosen[slot[s]] = ri;
        }
    }
    Ok(net.rank_of(chosen) == classes.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_space::complex_to_index;

    fn v(terms: &[(u32, u32)]) -> Vertex {
        Vertex::from_terms(terms.iter().map(|&(s, c)| (SpeciesId(s), c)))
    }

    fn rev(a: Vertex, b: Vertex) -> [Reaction; 2] {
        let r = Reaction::new(a, b).unwrap();
        [r.reversed(), r]
    }

    // S=1, E=2, SE=3, P=4
    fn enzyme() -> ReactionNetwork {
        let rs = [
            rev(v(&[(1, 1), (2, 1)]), v(&[(3, 1)])),
            rev(v(&[(3, 1)]), v(&[(4, 1), (2, 1)])),
            rev(v(&[(2, 1)]), v(&[])),
            rev(v(&[]), v(&[(1, 1)])),
        ];
        ReactionNetwork::new(4, rs.into_iter().flatten()).unwrap()
    }

    fn triangle_and_pair() -> ReactionNetwork {
        let one = |a: Vertex, b: Vertex| Reaction::new(a, b).unwrap();
        let mut rs = vec![
            one(v(&[]), v(&[(1, 1), (2, 1)])),
            one(v(&[(1, 1), (2, 1)]), v(&[(2, 1)])),
            one(v(&[(2, 1)]), v(&[])),
        ];
        rs.extend(rev(v(&[(1, 2)]), v(&[(2, 2)])));
        ReactionNetwork::new(2, rs).unwrap()
    }

    fn three_paired() -> ReactionNetwork {
        let b = |a, c| v(&[(a, 1), (c, 1)]);
        let rs = [
            rev(b(1, 2), b(3, 4)),
            rev(b(1, 3), b(5, 6)),
            rev(b(6, 7), b(8, 9)),
        ];
        ReactionNetwork::new(9, rs.into_iter().flatten()).unwrap()
    }

    fn two_paired() -> ReactionNetwork {
        let idx = |c| complex_to_index(2, c).unwrap();
        ReactionNetwork::from_edge_list(
            2,
            &[
                (0, idx(Complex::binary(2, 2))),
                (idx(Complex::unary(2)), idx(Complex::binary(1, 2))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn enzyme_kinetics() {
        let net = enzyme();
        assert_eq!(connected_components(&net).len(), 2);
        assert_eq!(stoich_rank(&net), 4);
        let rep = deficiency(&net);
        assert_eq!(
            (
                rep.num_complexes,
                rep.num_components,
                rep.rank,
                rep.deficiency
            ),
            (6, 2, 4, 0)
        );
        assert_eq!(rep.num_reactions, 8);
    }

    #[test]
    fn triangle_and_pair_network() {
        let rep = deficiency(&triangle_and_pair());
        assert_eq!(
            (
                rep.num_complexes,
                rep.num_components,
                rep.rank,
                rep.deficiency
            ),
            (5, 2, 2, 1)
        );
        assert_eq!(is_paired(&triangle_and_pair()), (false, 2));
        // the triangle has |C_j| = 3, s_j = 2
        assert_eq!(
            rep.components[0],
            ComponentReport {
                num_complexes: 3,
                rank: 2,
                deficiency: 0
            }
        );
    }

    #[test]
    fn three_paired_example() {
        let net = three_paired();
        assert_eq!(deficiency(&net).deficiency, 0);
        assert_eq!(is_paired(&net), (true, 3));
        assert!(paired_def_zero(&net).unwrap());
    }

    #[test]
    fn two_paired_network() {
        let net = two_paired();
        assert_eq!(stoich_rank(&net), 2);
        let rep = deficiency(&net);
        assert_eq!(
            (rep.num_complexes, rep.num_components, rep.deficiency),
            (4, 2, 0)
        );
        let added = net
            .add_reaction(Reaction::between(Complex::unary(2), Complex::ZeroOrder).unwrap())
            .unwrap();
        let rep = deficiency(&added);
        assert_eq!(
            (
                rep.num_complexes,
                rep.num_components,
                rep.rank,
                rep.deficiency
            ),
            (4, 1, 2, 1)
        );
    }

    #[test]
    fn empty_network() {
        let net = ReactionNetwork::empty(3);
        assert!(connected_components(&net).is_empty());
        assert_eq!(stoich_rank(&net), 0);
        let rep = deficiency(&net);
        assert_eq!(rep.deficiency, 0);
        assert_eq!(is_paired(&net), (true, 0));
        assert!(paired_def_zero(&net).unwrap());
        let one = net
            .add_reaction(Reaction::between(Complex::ZeroOrder, Complex::unary(1)).unwrap())
            .unwrap();
        assert_eq!(deficiency(&one).deficiency, 0);
        assert_eq!(connected_components(&one).len(), 1);
    }

    #[test]
    fn paired_with_equal_vectors() {
        let rs = [
            rev(v(&[(1, 1)]), v(&[(2, 1)])),
            rev(v(&[(1, 1), (3, 1)]), v(&[(2, 1), (3, 1)])),
        ];
        let net = ReactionNetwork::new(3, rs.into_iter().flatten()).unwrap();
        assert_eq!(is_paired(&net), (true, 2));
        assert!(!paired_def_zero(&net).unwrap());
        assert_eq!(deficiency(&net).deficiency, 1);
    }

    #[test]
    fn paired_precondition() {
        assert_eq!(
            paired_def_zero(&triangle_and_pair()),
            Err(NetworkError::NotPaired)
        );
    }

    #[test]
    fn reaction_inside_component_keeps_deficiency() {
        // 0 -> S1+S2 -> S2 chain, then close the triangle
        let base = ReactionNetwork::new(
            2,
            [
                Reaction::new(v(&[]), v(&[(1, 1), (2, 1)])).unwrap(),
                Reaction::new(v(&[(1, 1), (2, 1)]), v(&[(2, 1)])).unwrap(),
            ],
        )
        .unwrap();
        let closed = base
            .add_reaction(Reaction::new(v(&[(2, 1)]), v(&[])).unwrap())
            .unwrap();
        assert_eq!(deficiency(&base).deficiency, deficiency(&closed).deficiency);
    }

    #[test]
    fn add_reaction_errors() {
        let net = two_paired();
        let dup = net.reactions()[0].clone();
        assert!(matches!(
            net.add_reaction(dup),
            Err(NetworkError::DuplicateReaction(_))
        ));
        assert!(matches!(
            Reaction::new(v(&[(1, 1)]), v(&[(1, 1)])),
            Err(NetworkError::SelfReaction(_))
        ));
        let far = Reaction::between(Complex::unary(3), Complex::ZeroOrder).unwrap();
        assert!(matches!(
            net.add_reaction(far),
            Err(NetworkError::SpeciesOutOfRange { .. })
        ));
    }

    #[test]
    fn edge_list() {
        let net = ReactionNetwork::from_edge_list(1, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(net.reactions().len(), 4);
        assert_eq!(net.vertices().len(), 3);
        assert_eq!(deficiency(&net).deficiency, 1);
        assert!(ReactionNetwork::from_edge_list(3, &[]).unwrap().is_empty());
        assert!(matches!(
            ReactionNetwork::from_edge_list(1, &[(0, 3)]),
            Err(NetworkError::IndexOutOfRange { idx: 3, .. })
        ));
        assert!(ReactionNetwork::from_edge_list(1, &[(1, 1)]).is_err());
        assert!(ReactionNetwork::from_edge_list(1, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn vertex_order_matches_universe_index() {
        let n = 6;
        let all: Vec<Vertex> = crate::complex_space::enumerate(n)
            .map(Vertex::from)
            .collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for c in crate::complex_space::enumerate(n) {
            assert_eq!(Vertex::from(c).as_complex(), Some(c));
        }
    }

    #[test]
    fn stoich_matrix_columns() {
        let net = two_paired();
        let m = stoich_matrix(&net);
        assert_eq!((m.rows(), m.cols()), (2, 4));
        for c in 0..m.cols() {
            let abs: i64 = (0..m.rows()).map(|r| m.get(r, c).abs()).sum();
            assert!(abs <= 4);
        }
        assert_eq!(crate::rank::exact_rank(&m), stoich_rank(&net));
    }

    #[test]
    fn higher_molecularity() {
        // 3A <-> A + 2B <-> 3B: vectors (-2,2) and (-1,1) are parallel
        let rs = [
            rev(v(&[(1, 3)]), v(&[(1, 1), (2, 2)])),
            rev(v(&[(1, 1), (2, 2)]), v(&[(2, 3)])),
        ];
        let net = ReactionNetwork::new(2, rs.into_iter().flatten()).unwrap();
        let rep = deficiency(&net);
        assert_eq!(
            (
                rep.num_complexes,
                rep.num_components,
                rep.rank,
                rep.deficiency
            ),
            (3, 1, 1, 1)
        );
        assert!(!net.is_binary());
    }
}
