//! Configurations, lattices, sectors and symmetry groups.
//!
//! Local-state encodings are fixed throughout the crate:
//! spins have `D = 2` with `0 = up`, `1 = down`; fermions have `D = 4` with
//! `0 = empty`, `1 = up`, `2 = down`, `3 = doubly occupied`.

use crate::error::{Error, Result};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Local-state index of an up spin (D = 2 encoding).
pub const SPIN_UP: u8 = 0;
/// Local-state index of a down spin (D = 2 encoding).
pub const SPIN_DOWN: u8 = 1;

/// A many-body configuration: one local-state index per site.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisConfig(pub Vec<u8>);

impl BasisConfig {
    pub fn new(occ: Vec<u8>) -> Self {
        BasisConfig(occ)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether an up electron occupies `site` (fermionic D = 4 encoding).
    #[inline]
    pub fn has_up(&self, site: usize) -> bool {
        self.0[site] & 1 != 0
    }

    /// Whether a down electron occupies `site` (fermionic D = 4 encoding).
    #[inline]
    pub fn has_down(&self, site: usize) -> bool {
        self.0[site] & 2 != 0
    }

    /// Parse from a string of digit characters, one per site.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::invalid(format!("bad config character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(BasisConfig)
    }
}

impl fmt::Display for BasisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &o in &self.0 {
            write!(f, "{o}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BasisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Boundary condition of one lattice axis.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Boundary {
    Open,
    Periodic,
    /// Periodic for geometry and symmetries; boundary-crossing hop amplitudes
    /// pick up a factor of -1 in the Hamiltonian.
    Antiperiodic,
}

impl Boundary {
    pub fn wraps(self) -> bool {
        !matches!(self, Boundary::Open)
    }
}

/// A bond between two sites, tagged with whether its shortest image crosses a
/// lattice boundary on each axis.
#[derive(Clone, Copy, Debug)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub crosses: [bool; 2],
}

impl Bond {
    /// -1 for each antiperiodic axis the bond crosses.
    pub fn boundary_sign(&self, lattice: &Lattice) -> f64 {
        let mut s = 1.0;
        for ax in 0..2 {
            if self.crosses[ax] && lattice.boundary[ax] == Boundary::Antiperiodic {
                s = -s;
            }
        }
        s
    }
}

/// Rectangular lattice in one or two dimensions.
///
/// One-dimensional chains are represented as `1 x L`. Site indices are
/// row-major. Graph distances count edges of the lattice graph, wrapping
/// around periodic and antiperiodic axes.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub dims: [usize; 2],
    pub boundary: [Boundary; 2],
    nn_bonds: Vec<Bond>,
    nnn_bonds: Vec<Bond>,
    neighbors: Vec<Vec<usize>>,
    next_neighbors: Vec<Vec<usize>>,
    dist: Vec<u32>,
}

impl Lattice {
    /// One-dimensional chain of `l` sites.
    pub fn chain(l: usize, boundary: Boundary) -> Result<Self> {
        Self::rectangle([1, l], [Boundary::Open, boundary])
    }

    /// Two-dimensional rectangular lattice.
    pub fn rectangle(dims: [usize; 2], boundary: [Boundary; 2]) -> Result<Self> {
        if dims[0] == 0 || dims[1] == 0 {
            return Err(Error::invalid("lattice extents must be positive"));
        }
        let n = dims[0] * dims[1];
        let mut lat = Lattice {
            dims,
            boundary,
            nn_bonds: Vec::new(),
            nnn_bonds: Vec::new(),
            neighbors: vec![Vec::new(); n],
            next_neighbors: vec![Vec::new(); n],
            dist: Vec::new(),
        };
        lat.build_bonds();
        lat.build_distances();
        Ok(lat)
    }

    pub fn num_sites(&self) -> usize {
        self.dims[0] * self.dims[1]
    }

    #[inline]
    pub fn site_index(&self, row: usize, col: usize) -> usize {
        row * self.dims[1] + col
    }

    #[inline]
    pub fn coords(&self, site: usize) -> (usize, usize) {
        (site / self.dims[1], site % self.dims[1])
    }

    /// Shift a coordinate along one axis, wrapping on non-open axes.
    /// Returns `(coordinate, wrapped)` or `None` if the step leaves an open axis.
    fn step(&self, axis: usize, coord: usize, delta: isize) -> Option<(usize, bool)> {
        let extent = self.dims[axis] as isize;
        let raw = coord as isize + delta;
        if raw >= 0 && raw < extent {
            return Some((raw as usize, false));
        }
        if self.boundary[axis].wraps() {
            Some(((raw.rem_euclid(extent)) as usize, true))
        } else {
            None
        }
    }

    fn build_bonds(&mut self) {
        let (rows, cols) = (self.dims[0], self.dims[1]);
        // Nearest neighbours: one bond per site and positive axis direction.
        for r in 0..rows {
            for c in 0..cols {
                let a = self.site_index(r, c);
                if rows > 1 {
                    if let Some((r2, wrap)) = self.step(0, r, 1) {
                        let b = self.site_index(r2, c);
                        if a != b {
                            self.nn_bonds.push(Bond { a, b, crosses: [wrap, false] });
                        }
                    }
                }
                if cols > 1 {
                    if let Some((c2, wrap)) = self.step(1, c, 1) {
                        let b = self.site_index(r, c2);
                        if a != b {
                            self.nn_bonds.push(Bond { a, b, crosses: [false, wrap] });
                        }
                    }
                }
            }
        }
        // Next-nearest neighbours: diagonals in 2D, distance-2 pairs in 1D.
        for r in 0..rows {
            for c in 0..cols {
                let a = self.site_index(r, c);
                if rows > 1 && cols > 1 {
                    for dc in [-1isize, 1] {
                        if let (Some((r2, w0)), Some((c2, w1))) =
                            (self.step(0, r, 1), self.step(1, c, dc))
                        {
                            let b = self.site_index(r2, c2);
                            if a != b {
                                self.nnn_bonds.push(Bond { a, b, crosses: [w0, w1] });
                            }
                        }
                    }
                } else if rows == 1 && cols > 2 {
                    if let Some((c2, wrap)) = self.step(1, c, 2) {
                        let b = self.site_index(r, c2);
                        if a != b {
                            self.nnn_bonds.push(Bond { a, b, crosses: [false, wrap] });
                        }
                    }
                }
            }
        }
        for bond in self.nn_bonds.iter() {
            self.neighbors[bond.a].push(bond.b);
            self.neighbors[bond.b].push(bond.a);
        }
        for bond in self.nnn_bonds.iter() {
            self.next_neighbors[bond.a].push(bond.b);
            self.next_neighbors[bond.b].push(bond.a);
        }
    }

    fn build_distances(&mut self) {
        let n = self.num_sites();
        self.dist = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ra, ca) = self.coords(a);
                let (rb, cb) = self.coords(b);
                let mut d = 0;
                for (axis, (x, y)) in [(0, (ra, rb)), (1, (ca, cb))] {
                    let ext = self.dims[axis];
                    let diff = x.abs_diff(y);
                    d += if self.boundary[axis].wraps() {
                        diff.min(ext - diff)
                    } else {
                        diff
                    };
                }
                self.dist[a * n + b] = d as u32;
            }
        }
    }

    /// Nearest-neighbour bonds, each unordered pair counted once per lattice edge.
    pub fn nn_bonds(&self) -> &[Bond] {
        &self.nn_bonds
    }

    /// Next-nearest-neighbour bonds (diagonals in 2D, range-2 pairs in 1D).
    pub fn nnn_bonds(&self) -> &[Bond] {
        &self.nnn_bonds
    }

    pub fn neighbors(&self, site: usize) -> &[usize] {
        &self.neighbors[site]
    }

    pub fn next_neighbors(&self, site: usize) -> &[usize] {
        &self.next_neighbors[site]
    }

    /// Graph distance between two sites (Manhattan distance with wrap on
    /// non-open axes).
    #[inline]
    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.dist[a * self.num_sites() + b]
    }

    /// Checkerboard sublattice-A membership: (row + col) even.
    pub fn sublattice_a(&self) -> Vec<bool> {
        (0..self.num_sites())
            .map(|s| {
                let (r, c) = self.coords(s);
                (r + c) % 2 == 0
            })
            .collect()
    }

    /// Whether the checkerboard pattern is consistent across all wrapped bonds.
    pub fn is_bipartite(&self) -> bool {
        let sub = self.sublattice_a();
        self.nn_bonds.iter().all(|b| sub[b.a] != sub[b.b])
    }
}

/// One symmetry operation: a site permutation, an optional relabeling of the
/// local states, and a character phase used by projective symmetrization.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetryOp {
    /// Source site for each destination: `S[x]_i = relabel(x[src[i]])`.
    pub src: Vec<usize>,
    pub relabel: Option<Vec<u8>>,
    pub phase: C64,
}

impl SymmetryOp {
    pub fn identity(l: usize) -> Self {
        SymmetryOp { src: (0..l).collect(), relabel: None, phase: C64::new(1.0, 0.0) }
    }

    pub fn is_identity(&self) -> bool {
        self.relabel.is_none()
            && self.src.iter().enumerate().all(|(i, &s)| i == s)
            && self.phase == C64::new(1.0, 0.0)
    }

    /// `self` composed after `other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryOp) -> SymmetryOp {
        let src = self.src.iter().map(|&i| other.src[i]).collect();
        let relabel = match (&self.relabel, &other.relabel) {
            (None, None) => None,
            (Some(r), None) | (None, Some(r)) => Some(r.clone()),
            (Some(r1), Some(r2)) => Some(r1.iter().map(|&v| r2[v as usize]).collect()),
        };
        SymmetryOp { src, relabel, phase: self.phase * other.phase }
    }
}

/// Apply a symmetry operation to a configuration.
pub fn apply_symmetry(op: &SymmetryOp, x: &BasisConfig) -> Result<BasisConfig> {
    if op.src.len() != x.len() {
        return Err(Error::invalid(format!(
            "symmetry operation acts on {} sites, configuration has {}",
            op.src.len(),
            x.len()
        )));
    }
    let mut out = Vec::with_capacity(x.len());
    match &op.relabel {
        None => {
            for &s in &op.src {
                out.push(x.0[s]);
            }
        }
        Some(rel) => {
            for &s in &op.src {
                out.push(rel[x.0[s] as usize]);
            }
        }
    }
    Ok(BasisConfig(out))
}

/// An ordered list of symmetry operations; the identity is element 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetryGroup {
    pub ops: Vec<SymmetryOp>,
}

impl SymmetryGroup {
    pub fn identity(l: usize) -> Self {
        SymmetryGroup { ops: vec![SymmetryOp::identity(l)] }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Which generator groups to include when building a symmetry group.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroupBuild {
    pub translations: bool,
    pub point_group: bool,
    pub spin_inversion: bool,
}

/// Build the product set of the requested generator groups.
///
/// The result has the identity first and size equal to the product of the
/// factor-group sizes. `d` is the local Hilbert space dimension (spin
/// inversion relabels 0<->1 for `d = 2` and 1<->2 for `d = 4`).
pub fn build_group(lattice: &Lattice, d: usize, parts: GroupBuild) -> Result<SymmetryGroup> {
    let l = lattice.num_sites();
    let mut translations = vec![SymmetryOp::identity(l)];
    if parts.translations {
        for (axis, &ext) in lattice.dims.iter().enumerate() {
            if ext > 1 && !lattice.boundary[axis].wraps() {
                return Err(Error::invalid(
                    "translations requested on an open axis".to_string(),
                ));
            }
        }
        translations.clear();
        let (rows, cols) = (lattice.dims[0], lattice.dims[1]);
        for dr in 0..rows {
            for dc in 0..cols {
                let mut src = vec![0usize; l];
                for i in 0..l {
                    let (r, c) = lattice.coords(i);
                    // destination i receives the value previously at i - delta
                    let sr = (r + rows - dr) % rows;
                    let sc = (c + cols - dc) % cols;
                    src[i] = lattice.site_index(sr, sc);
                }
                translations.push(SymmetryOp { src, relabel: None, phase: C64::new(1.0, 0.0) });
            }
        }
    }

    let mut point = vec![SymmetryOp::identity(l)];
    if parts.point_group {
        point = point_group_ops(lattice);
    }

    let mut spin = vec![SymmetryOp::identity(l)];
    if parts.spin_inversion {
        let relabel: Vec<u8> = match d {
            2 => vec![1, 0],
            4 => vec![0, 2, 1, 3],
            _ => {
                return Err(Error::invalid(format!(
                    "spin inversion undefined for local dimension {d}"
                )))
            }
        };
        spin.push(SymmetryOp { src: (0..l).collect(), relabel: Some(relabel), phase: C64::new(1.0, 0.0) });
    }

    let mut ops = Vec::with_capacity(translations.len() * point.len() * spin.len());
    for t in &translations {
        for p in &point {
            for s in &spin {
                ops.push(t.compose(p).compose(s));
            }
        }
    }
    Ok(SymmetryGroup { ops })
}

/// Point group of the lattice rectangle: D4 (order 8) for squares, D2
/// (order 4) for proper rectangles, reflection only (order 2) for chains.
fn point_group_ops(lattice: &Lattice) -> Vec<SymmetryOp> {
    let l = lattice.num_sites();
    let (rows, cols) = (lattice.dims[0], lattice.dims[1]);
    // Transformations as (row, col) maps; for squares add the diagonal ones.
    let mut maps: Vec<Box<dyn Fn(usize, usize) -> (usize, usize)>> = vec![
        Box::new(|r, c| (r, c)),
        Box::new(move |r, c| (rows - 1 - r, cols - 1 - c)),
        Box::new(move |r, c| (rows - 1 - r, c)),
        Box::new(move |r, c| (r, cols - 1 - c)),
    ];
    if rows == cols && rows > 1 {
        maps.push(Box::new(move |r, c| (c, r)));
        maps.push(Box::new(move |r, c| (cols - 1 - c, rows - 1 - r)));
        maps.push(Box::new(move |r, c| (c, rows - 1 - r)));
        maps.push(Box::new(move |r, c| (cols - 1 - c, r)));
    }
    let mut ops: Vec<SymmetryOp> = Vec::new();
    for map in maps {
        let mut src = vec![0usize; l];
        for i in 0..l {
            let (r, c) = lattice.coords(i);
            let (sr, sc) = map(r, c);
            src[i] = lattice.site_index(sr, sc);
        }
        let op = SymmetryOp { src, relabel: None, phase: C64::new(1.0, 0.0) };
        if !ops.iter().any(|o| o.src == op.src) {
            ops.push(op);
        }
    }
    ops
}

/// Particle-number / magnetization sector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorSpec {
    /// Spin-1/2 sector with a fixed number of up sites (local encoding 0).
    SpinZ { n_up: usize },
    /// Fermionic sector with fixed numbers of up and down electrons.
    Fermion { n_up: usize, n_down: usize },
}

impl SectorSpec {
    pub fn local_dim(&self) -> usize {
        match self {
            SectorSpec::SpinZ { .. } => 2,
            SectorSpec::Fermion { .. } => 4,
        }
    }

    pub fn contains(&self, x: &BasisConfig) -> bool {
        match *self {
            SectorSpec::SpinZ { n_up } => {
                x.0.iter().filter(|&&o| o == SPIN_UP).count() == n_up
                    && x.0.iter().all(|&o| o < 2)
            }
            SectorSpec::Fermion { n_up, n_down } => {
                x.0.iter().all(|&o| o < 4)
                    && (0..x.len()).filter(|&s| x.has_up(s)).count() == n_up
                    && (0..x.len()).filter(|&s| x.has_down(s)).count() == n_down
            }
        }
    }

    /// Closed-form sector dimension.
    pub fn dimension(&self, l: usize) -> usize {
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            let k = k.min(n - k);
            let mut acc: u128 = 1;
            for i in 0..k {
                acc = acc * (n - i) as u128 / (i + 1) as u128;
            }
            acc as usize
        }
        match *self {
            SectorSpec::SpinZ { n_up } => binom(l, n_up),
            SectorSpec::Fermion { n_up, n_down } => binom(l, n_up) * binom(l, n_down),
        }
    }
}

/// Enumerate all configurations of a sector in lexicographic order.
pub fn enumerate_sector(l: usize, sector: &SectorSpec) -> Vec<BasisConfig> {
    let mut out = Vec::with_capacity(sector.dimension(l));
    match *sector {
        SectorSpec::SpinZ { n_up } => {
            if n_up > l {
                return out;
            }
            let mut cur = vec![0u8; l];
            enumerate_spin(&mut cur, 0, n_up, &mut out);
        }
        SectorSpec::Fermion { n_up, n_down } => {
            if n_up > l || n_down > l {
                return out;
            }
            let mut cur = vec![0u8; l];
            enumerate_fermion(&mut cur, 0, n_up, n_down, &mut out);
        }
    }
    out
}

fn enumerate_spin(cur: &mut Vec<u8>, site: usize, ups_left: usize, out: &mut Vec<BasisConfig>) {
    let l = cur.len();
    let remaining = l - site;
    if ups_left > remaining {
        return;
    }
    if site == l {
        out.push(BasisConfig(cur.clone()));
        return;
    }
    if ups_left > 0 {
        cur[site] = SPIN_UP;
        enumerate_spin(cur, site + 1, ups_left - 1, out);
    }
    if remaining - 1 >= ups_left {
        cur[site] = SPIN_DOWN;
        enumerate_spin(cur, site + 1, ups_left, out);
    }
}

fn enumerate_fermion(
    cur: &mut Vec<u8>,
    site: usize,
    ups_left: usize,
    downs_left: usize,
    out: &mut Vec<BasisConfig>,
) {
    let l = cur.len();
    let remaining = l - site;
    if ups_left > remaining || downs_left > remaining {
        return;
    }
    if site == l {
        out.push(BasisConfig(cur.clone()));
        return;
    }
    // local states in lexicographic order: empty, up, down, double
    cur[site] = 0;
    enumerate_fermion(cur, site + 1, ups_left, downs_left, out);
    if ups_left > 0 {
        cur[site] = 1;
        enumerate_fermion(cur, site + 1, ups_left - 1, downs_left, out);
    }
    if downs_left > 0 {
        cur[site] = 2;
        enumerate_fermion(cur, site + 1, ups_left, downs_left - 1, out);
        if ups_left > 0 {
            cur[site] = 3;
            enumerate_fermion(cur, site + 1, ups_left - 1, downs_left - 1, out);
        }
    }
}

/// Lexicographically smallest configuration in the symmetry orbit of `x`.
pub fn canonical_representative(x: &BasisConfig, group: &SymmetryGroup) -> BasisConfig {
    let mut best: Option<BasisConfig> = None;
    for op in &group.ops {
        let y = apply_symmetry(op, x).expect("group operation length mismatch");
        match &best {
            Some(b) if *b <= y => {}
            _ => best = Some(y),
        }
    }
    best.unwrap_or_else(|| x.clone())
}

/// All symmetrically inequivalent configurations of a sector (one canonical
/// representative per orbit), in lexicographic order.
pub fn inequivalent_configs(
    l: usize,
    sector: &SectorSpec,
    group: &SymmetryGroup,
) -> Vec<BasisConfig> {
    let mut reps: Vec<BasisConfig> = enumerate_sector(l, sector)
        .into_iter()
        .filter(|x| canonical_representative(x, group) == *x)
        .collect();
    reps.sort();
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_identity_returns_input() {
        let x = BasisConfig::new(vec![0, 1, 0, 1]);
        let id = SymmetryOp::identity(4);
        assert_eq!(apply_symmetry(&id, &x).unwrap(), x);
    }

    #[test]
    fn apply_cyclic_shift() {
        // shift-by-1 on a periodic 4-chain moves each value one site right
        let lat = Lattice::chain(4, Boundary::Periodic).unwrap();
        let g = build_group(&lat, 2, GroupBuild { translations: true, ..Default::default() })
            .unwrap();
        let x = BasisConfig::new(vec![0, 0, 1, 1]);
        let shifted = apply_symmetry(&g.ops[1], &x).unwrap();
        assert_eq!(shifted, BasisConfig::new(vec![1, 0, 0, 1]));
    }

    #[test]
    fn apply_spin_inversion() {
        let lat = Lattice::chain(4, Boundary::Periodic).unwrap();
        let g = build_group(&lat, 2, GroupBuild { spin_inversion: true, ..Default::default() })
            .unwrap();
        assert_eq!(g.len(), 2);
        let x = BasisConfig::new(vec![0, 1, 0, 1]);
        assert_eq!(apply_symmetry(&g.ops[1], &x).unwrap(), BasisConfig::new(vec![1, 0, 1, 0]));
    }

    #[test]
    fn apply_length_mismatch_is_error() {
        let id = SymmetryOp::identity(3);
        let x = BasisConfig::new(vec![0, 1]);
        assert!(apply_symmetry(&id, &x).is_err());
    }

    #[test]
    fn group_orders() {
        let chain = Lattice::chain(4, Boundary::Periodic).unwrap();
        let g = build_group(&chain, 2, GroupBuild { translations: true, ..Default::default() })
            .unwrap();
        assert_eq!(g.len(), 4);
        assert!(g.ops[0].is_identity());

        let torus = Lattice::rectangle([2, 2], [Boundary::Periodic; 2]).unwrap();
        let g =
            build_group(&torus, 2, GroupBuild { translations: true, ..Default::default() })
                .unwrap();
        assert_eq!(g.len(), 4);

        let g = build_group(
            &chain,
            2,
            GroupBuild { translations: true, spin_inversion: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn group_on_open_axis_is_error() {
        let chain = Lattice::chain(4, Boundary::Open).unwrap();
        assert!(build_group(&chain, 2, GroupBuild { translations: true, ..Default::default() })
            .is_err());
    }

    #[test]
    fn point_group_orders() {
        let chain = Lattice::chain(6, Boundary::Periodic).unwrap();
        let g = build_group(&chain, 2, GroupBuild { point_group: true, ..Default::default() })
            .unwrap();
        assert_eq!(g.len(), 2);

        let rect = Lattice::rectangle([2, 4], [Boundary::Periodic; 2]).unwrap();
        let g = build_group(&rect, 2, GroupBuild { point_group: true, ..Default::default() })
            .unwrap();
        assert_eq!(g.len(), 4);

        let square = Lattice::rectangle([3, 3], [Boundary::Periodic; 2]).unwrap();
        let g = build_group(&square, 2, GroupBuild { point_group: true, ..Default::default() })
            .unwrap();
        assert_eq!(g.len(), 8);
    }

    #[test]
    fn sector_enumeration_counts() {
        let s = enumerate_sector(4, &SectorSpec::SpinZ { n_up: 2 });
        assert_eq!(s.len(), 6);
        assert!(s.windows(2).all(|w| w[0] < w[1]), "lexicographic order");

        let s = enumerate_sector(8, &SectorSpec::Fermion { n_up: 4, n_down: 4 });
        assert_eq!(s.len(), 4900);
        assert_eq!(SectorSpec::Fermion { n_up: 4, n_down: 4 }.dimension(8), 4900);

        let s = enumerate_sector(2, &SectorSpec::SpinZ { n_up: 0 });
        assert_eq!(s, vec![BasisConfig::new(vec![1, 1])]);

        // empty sector
        let s = enumerate_sector(2, &SectorSpec::SpinZ { n_up: 3 });
        assert!(s.is_empty());
    }

    #[test]
    fn sector_enumeration_matches_closed_form() {
        for l in 1..=8 {
            for n_up in 0..=l {
                let sec = SectorSpec::SpinZ { n_up };
                assert_eq!(enumerate_sector(l, &sec).len(), sec.dimension(l));
            }
        }
        for l in 1..=5 {
            for n_up in 0..=l {
                for n_down in 0..=l {
                    let sec = SectorSpec::Fermion { n_up, n_down };
                    let e = enumerate_sector(l, &sec);
                    assert_eq!(e.len(), sec.dimension(l));
                    assert!(e.iter().all(|x| sec.contains(x)));
                }
            }
        }
    }

    #[test]
    fn canonical_representative_examples() {
        let lat = Lattice::chain(4, Boundary::Periodic).unwrap();
        let g = build_group(&lat, 2, GroupBuild { translations: true, ..Default::default() })
            .unwrap();
        let x = BasisConfig::new(vec![1, 0, 0, 0]);
        assert_eq!(canonical_representative(&x, &g), BasisConfig::new(vec![0, 0, 0, 1]));

        let id = SymmetryGroup::identity(4);
        assert_eq!(canonical_representative(&x, &id), x);
    }

    #[test]
    fn canonical_representative_is_orbit_invariant() {
        let lat = Lattice::chain(6, Boundary::Periodic).unwrap();
        let g = build_group(
            &lat,
            2,
            GroupBuild { translations: true, spin_inversion: true, ..Default::default() },
        )
        .unwrap();
        for x in enumerate_sector(6, &SectorSpec::SpinZ { n_up: 3 }) {
            let rep = canonical_representative(&x, &g);
            for op in &g.ops {
                let y = apply_symmetry(op, &x).unwrap();
                assert_eq!(canonical_representative(&y, &g), rep);
            }
            assert_eq!(canonical_representative(&rep, &g), rep, "idempotent");
        }
    }

    #[test]
    fn hubbard_orbit_count_matches_brute_force() {
        // brute-force orbit enumeration over the full 4900-config sector
        let lat = Lattice::chain(8, Boundary::Antiperiodic).unwrap();
        let g = build_group(
            &lat,
            4,
            GroupBuild { translations: true, spin_inversion: true, ..Default::default() },
        )
        .unwrap();
        let sector = SectorSpec::Fermion { n_up: 4, n_down: 4 };
        let all = enumerate_sector(8, &sector);
        let mut orbit_reps = std::collections::HashSet::new();
        for x in &all {
            orbit_reps.insert(canonical_representative(x, &g));
        }
        let reps = inequivalent_configs(8, &sector, &g);
        assert_eq!(reps.len(), orbit_reps.len());
        // every orbit representative is a sector member and canonical
        for r in &reps {
            assert!(sector.contains(r));
        }
    }

    #[test]
    fn distances_wrap_on_periodic_axes() {
        let lat = Lattice::chain(8, Boundary::Periodic).unwrap();
        assert_eq!(lat.distance(0, 7), 1);
        assert_eq!(lat.distance(0, 4), 4);
        let open = Lattice::chain(8, Boundary::Open).unwrap();
        assert_eq!(open.distance(0, 7), 7);
        let torus = Lattice::rectangle([4, 4], [Boundary::Periodic; 2]).unwrap();
        assert_eq!(torus.distance(0, torus.site_index(3, 3)), 2);
        assert_eq!(torus.distance(0, torus.site_index(2, 2)), 4);
    }

    #[test]
    fn distance_is_a_metric() {
        let lat = Lattice::rectangle([3, 4], [Boundary::Periodic, Boundary::Open]).unwrap();
        let n = lat.num_sites();
        for a in 0..n {
            assert_eq!(lat.distance(a, a), 0);
            for b in 0..n {
                assert_eq!(lat.distance(a, b), lat.distance(b, a));
                for c in 0..n {
                    assert!(lat.distance(a, c) <= lat.distance(a, b) + lat.distance(b, c));
                }
            }
        }
    }

    #[test]
    fn bond_counts() {
        let t = Lattice::rectangle([4, 4], [Boundary::Periodic; 2]).unwrap();
        assert_eq!(t.nn_bonds().len(), 32);
        assert_eq!(t.nnn_bonds().len(), 32);
        let c = Lattice::chain(8, Boundary::Periodic).unwrap();
        assert_eq!(c.nn_bonds().len(), 8);
        let o = Lattice::chain(8, Boundary::Open).unwrap();
        assert_eq!(o.nn_bonds().len(), 7);
    }

    #[test]
    fn neighbor_lists_are_symmetric() {
        let lat = Lattice::rectangle([4, 4], [Boundary::Periodic, Boundary::Antiperiodic]).unwrap();
        for a in 0..lat.num_sites() {
            for &b in lat.neighbors(a) {
                assert!(lat.neighbors(b).contains(&a));
            }
            for &b in lat.next_neighbors(a) {
                assert!(lat.next_neighbors(b).contains(&a));
            }
        }
    }

    #[test]
    fn config_string_round_trip() {
        let x = BasisConfig::parse("0132").unwrap();
        assert_eq!(x, BasisConfig::new(vec![0, 1, 3, 2]));
        assert_eq!(x.to_string(), "0132");
        assert!(BasisConfig::parse("01a2").is_err());
    }
}
