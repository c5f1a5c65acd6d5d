//! Sparse-row Hamiltonians: J1-J2 spin models (with optional MSR basis
//! transform), Fermi-Hubbard chains and lattices, and FCIDUMP-backed
//! ab-initio Hamiltonians with correct fermionic parities.

use crate::config::{BasisConfig, Lattice, SectorSpec};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

/// One nonzero Hamiltonian matrix element `<target|H|x>` of a row.
///
/// All Hamiltonians in this crate are real symmetric in the computational
/// basis, so amplitudes are stored as real numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectedElement {
    pub target: BasisConfig,
    pub amplitude: f64,
}

/// Common interface of all sparse-row Hamiltonians.
pub trait Hamiltonian: Sync {
    fn num_sites(&self) -> usize;
    fn local_dim(&self) -> usize;
    fn sector(&self) -> SectorSpec;

    /// The row of `H` belonging to configuration `x`. The diagonal element is
    /// always emitted first, even when it is zero; off-diagonal zeros are
    /// dropped and targets are unique.
    fn connected_elements(&self, x: &BasisConfig) -> Result<Vec<ConnectedElement>>;

    /// Sites reachable from `site` by a single-particle move proposal.
    fn hop_neighbors(&self, site: usize) -> &[usize];
}

fn check_sector(sector: &SectorSpec, x: &BasisConfig, l: usize) -> Result<()> {
    if x.len() != l {
        return Err(Error::invalid(format!(
            "configuration has {} sites, Hamiltonian has {l}",
            x.len()
        )));
    }
    if !sector.contains(x) {
        return Err(Error::invalid(format!("configuration {x} outside sector {sector:?}")));
    }
    Ok(())
}

/// Accumulates row elements, merging duplicate targets.
struct RowBuilder {
    diag: f64,
    off: HashMap<BasisConfig, f64>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder { diag: 0.0, off: HashMap::new() }
    }

    fn add_off(&mut self, target: BasisConfig, amp: f64) {
        *self.off.entry(target).or_insert(0.0) += amp;
    }

    fn finish(self, x: &BasisConfig) -> Vec<ConnectedElement> {
        let mut row = Vec::with_capacity(1 + self.off.len());
        row.push(ConnectedElement { target: x.clone(), amplitude: self.diag });
        let mut off: Vec<_> = self.off.into_iter().collect();
        off.sort_by(|a, b| a.0.cmp(&b.0));
        for (target, amplitude) in off {
            if amplitude != 0.0 {
                row.push(ConnectedElement { target, amplitude });
            }
        }
        row
    }
}

// ---------------------------------------------------------------------------
// J1-J2 spin model
// ---------------------------------------------------------------------------

/// Spin-1/2 J1-J2 Hamiltonian
/// `H = J1 sum_<ij> S_i.S_j + J2 sum_<<ij>> S_i.S_j`
/// with S^z entries +-1/2.
///
/// With `msr_transform` set, the Marshall sign rule basis change is folded
/// into the Hamiltonian: off-diagonal elements of bonds connecting the two
/// checkerboard sublattices change sign (all J1 bonds on a bipartite
/// lattice), leaving diagonal elements untouched.
#[derive(Clone, Debug)]
pub struct HeisenbergSpec {
    pub j1: f64,
    pub j2: f64,
    pub lattice: Lattice,
    pub msr_transform: bool,
    pub n_up: usize,
    sublattice_a: Vec<bool>,
}

impl HeisenbergSpec {
    pub fn new(
        lattice: Lattice,
        j1: f64,
        j2: f64,
        n_up: usize,
        msr_transform: bool,
    ) -> Result<Self> {
        if msr_transform && !lattice.is_bipartite() {
            return Err(Error::invalid("MSR transform requires a bipartite lattice"));
        }
        if n_up > lattice.num_sites() {
            return Err(Error::invalid("more up spins than sites"));
        }
        let sublattice_a = lattice.sublattice_a();
        Ok(HeisenbergSpec { j1, j2, lattice, msr_transform, n_up, sublattice_a })
    }
}

impl Hamiltonian for HeisenbergSpec {
    fn num_sites(&self) -> usize {
        self.lattice.num_sites()
    }

    fn local_dim(&self) -> usize {
        2
    }

    fn sector(&self) -> SectorSpec {
        SectorSpec::SpinZ { n_up: self.n_up }
    }

    fn connected_elements(&self, x: &BasisConfig) -> Result<Vec<ConnectedElement>> {
        check_sector(&self.sector(), x, self.num_sites())?;
        let mut row = RowBuilder::new();
        for (coupling, bonds) in
            [(self.j1, self.lattice.nn_bonds()), (self.j2, self.lattice.nnn_bonds())]
        {
            if coupling == 0.0 {
                continue;
            }
            for bond in bonds {
                let (a, b) = (bond.a, bond.b);
                if x.0[a] == x.0[b] {
                    row.diag += 0.25 * coupling;
                } else {
                    row.diag -= 0.25 * coupling;
                    let mut flip = 0.5 * coupling;
                    if self.msr_transform && self.sublattice_a[a] != self.sublattice_a[b] {
                        flip = -flip;
                    }
                    let mut y = x.clone();
                    y.0.swap(a, b);
                    row.add_off(y, flip);
                }
            }
        }
        Ok(row.finish(x))
    }

    fn hop_neighbors(&self, site: usize) -> &[usize] {
        self.lattice.neighbors(site)
    }
}

// ---------------------------------------------------------------------------
// Fermionic machinery
// ---------------------------------------------------------------------------

/// Electron spin species.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn occupies(self, x: &BasisConfig, site: usize) -> bool {
        match self {
            Spin::Up => x.has_up(site),
            Spin::Down => x.has_down(site),
        }
    }

    fn bit(self) -> u8 {
        match self {
            Spin::Up => 1,
            Spin::Down => 2,
        }
    }
}

/// Spin-orbital ordering: all up modes in ascending site order, then all
/// down modes ascending.
#[inline]
fn mode_index(l: usize, site: usize, spin: Spin) -> usize {
    match spin {
        Spin::Up => site,
        Spin::Down => l + site,
    }
}

/// Tracks a fermionic configuration while an operator string is applied,
/// accumulating the normal-ordering sign. Uses cumulative occupancies of the
/// starting configuration plus corrections for already-toggled modes, so each
/// operator costs O(1) for fixed string length.
struct FermionString<'a> {
    x: &'a BasisConfig,
    l: usize,
    /// occupied modes strictly below mode m in the *initial* configuration
    prefix: Vec<u32>,
    /// modes toggled so far: (mode, +1 created / -1 annihilated)
    toggles: Vec<(usize, i32)>,
    sign: f64,
}

impl<'a> FermionString<'a> {
    fn new(x: &'a BasisConfig) -> Self {
        let l = x.len();
        let mut prefix = vec![0u32; 2 * l + 1];
        for m in 0..2 * l {
            let (site, spin) = if m < l { (m, Spin::Up) } else { (m - l, Spin::Down) };
            prefix[m + 1] = prefix[m] + u32::from(spin.occupies(x, site));
        }
        FermionString { x, l, prefix, toggles: Vec::new(), sign: 1.0 }
    }

    fn occupied(&self, site: usize, spin: Spin) -> bool {
        let m = mode_index(self.l, site, spin);
        let mut occ = spin.occupies(self.x, site);
        for &(tm, delta) in &self.toggles {
            if tm == m {
                occ = delta > 0;
            }
        }
        occ
    }

    fn count_below(&self, m: usize) -> i64 {
        let mut c = self.prefix[m] as i64;
        for &(tm, delta) in &self.toggles {
            if tm < m {
                c += delta as i64;
            }
        }
        c
    }

    fn annihilate(&mut self, site: usize, spin: Spin) -> Result<()> {
        if !self.occupied(site, spin) {
            return Err(Error::invalid(format!(
                "annihilation on empty mode (site {site}, {spin:?})"
            )));
        }
        let m = mode_index(self.l, site, spin);
        if self.count_below(m) % 2 != 0 {
            self.sign = -self.sign;
        }
        self.toggles.push((m, -1));
        Ok(())
    }

    fn create(&mut self, site: usize, spin: Spin) -> Result<()> {
        if self.occupied(site, spin) {
            return Err(Error::invalid(format!(
                "creation on occupied mode (site {site}, {spin:?})"
            )));
        }
        let m = mode_index(self.l, site, spin);
        if self.count_below(m) % 2 != 0 {
            self.sign = -self.sign;
        }
        self.toggles.push((m, 1));
        Ok(())
    }

    fn finish(self) -> (BasisConfig, f64) {
        let mut y = self.x.clone();
        for &(m, delta) in &self.toggles {
            let (site, spin) = if m < self.l { (m, Spin::Up) } else { (m - self.l, Spin::Down) };
            if delta > 0 {
                y.0[site] |= spin.bit();
            } else {
                y.0[site] &= !spin.bit();
            }
        }
        (y, self.sign)
    }
}

/// Parity of the normal-ordered operator string that removes the listed
/// electrons and then adds the listed ones (each list applied in order).
///
/// Returns +-1, erroring when a removal hits an empty mode or an addition an
/// occupied one in the intermediate configuration.
pub fn fermion_parity(
    x: &BasisConfig,
    removals: &[(usize, Spin)],
    additions: &[(usize, Spin)],
) -> Result<f64> {
    let mut s = FermionString::new(x);
    for &(site, spin) in removals {
        s.annihilate(site, spin)?;
    }
    for &(site, spin) in additions {
        s.create(site, spin)?;
    }
    Ok(s.finish().1)
}

/// Apply hops `(from, to, spin)` in sequence; each hop removes an electron at
/// `from` and recreates it at `to`. Returns the final configuration and the
/// accumulated parity, or `None` when a hop is inconsistent with the
/// intermediate configuration.
pub fn apply_hops(x: &BasisConfig, hops: &[(usize, usize, Spin)]) -> Option<(BasisConfig, f64)> {
    let mut s = FermionString::new(x);
    for &(from, to, spin) in hops {
        s.annihilate(from, spin).ok()?;
        s.create(to, spin).ok()?;
    }
    Some(s.finish())
}

// ---------------------------------------------------------------------------
// Fermi-Hubbard model
// ---------------------------------------------------------------------------

/// Fermi-Hubbard Hamiltonian
/// `H = -t sum_sigma sum_<ij> (c+_i c_j + c+_j c_i) + U sum_i n_iu n_id`.
///
/// Bonds crossing an antiperiodic axis carry an extra factor of -1 on the
/// hopping amplitude.
#[derive(Clone, Debug)]
pub struct HubbardSpec {
    pub t: f64,
    pub u: f64,
    pub lattice: Lattice,
    pub n_up: usize,
    pub n_down: usize,
}

impl HubbardSpec {
    pub fn new(lattice: Lattice, t: f64, u: f64, n_up: usize, n_down: usize) -> Result<Self> {
        let l = lattice.num_sites();
        if n_up > l || n_down > l {
            return Err(Error::invalid("sector occupation exceeds site count"));
        }
        Ok(HubbardSpec { t, u, lattice, n_up, n_down })
    }
}

impl Hamiltonian for HubbardSpec {
    fn num_sites(&self) -> usize {
        self.lattice.num_sites()
    }

    fn local_dim(&self) -> usize {
        4
    }

    fn sector(&self) -> SectorSpec {
        SectorSpec::Fermion { n_up: self.n_up, n_down: self.n_down }
    }

    fn connected_elements(&self, x: &BasisConfig) -> Result<Vec<ConnectedElement>> {
        check_sector(&self.sector(), x, self.num_sites())?;
        let mut row = RowBuilder::new();
        row.diag = self.u * (0..x.len()).filter(|&s| x.0[s] == 3).count() as f64;
        for bond in self.lattice.nn_bonds() {
            let hop_amp = -self.t * bond.boundary_sign(&self.lattice);
            for spin in [Spin::Up, Spin::Down] {
                for (from, to) in [(bond.a, bond.b), (bond.b, bond.a)] {
                    if spin.occupies(x, from) && !spin.occupies(x, to) {
                        let (y, sign) = apply_hops(x, &[(from, to, spin)])
                            .expect("hop validity already checked");
                        row.add_off(y, hop_amp * sign);
                    }
                }
            }
        }
        Ok(row.finish(x))
    }

    fn hop_neighbors(&self, site: usize) -> &[usize] {
        self.lattice.neighbors(site)
    }
}

// ---------------------------------------------------------------------------
// Ab-initio Hamiltonian
// ---------------------------------------------------------------------------

/// Two-electron integrals in chemists' notation `(pq|rs)`, stored dense with
/// all eight permutational images populated.
#[derive(Clone)]
pub struct TwoElectronIntegrals {
    norb: usize,
    data: Vec<f64>,
}

impl TwoElectronIntegrals {
    pub fn zeros(norb: usize) -> Self {
        TwoElectronIntegrals { norb, data: vec![0.0; norb * norb * norb * norb] }
    }

    #[inline]
    fn idx(&self, p: usize, q: usize, r: usize, s: usize) -> usize {
        ((p * self.norb + q) * self.norb + r) * self.norb + s
    }

    #[inline]
    pub fn get(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.data[self.idx(p, q, r, s)]
    }

    /// Set `(pq|rs)` together with its eight symmetry-equivalent entries.
    pub fn set_sym(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in [
            (p, q, r, s),
            (q, p, r, s),
            (p, q, s, r),
            (q, p, s, r),
            (r, s, p, q),
            (s, r, p, q),
            (r, s, q, p),
            (s, r, q, p),
        ] {
            let i = self.idx(a, b, c, d);
            self.data[i] = v;
        }
    }
}

/// Second-quantized molecular Hamiltonian over `norb` spatial orbitals.
///
/// In terms of chemists' integrals the Hamiltonian reads
/// `H = E_core + sum_sigma sum_pq t_pq c+_p c_q
///    + 1/2 sum_pqrs (pq|rs) sum_sigma,tau (c+_p,sigma c_q,sigma)(c+_r,tau c_s,tau)`
/// with the effective one-body coefficients `t_pq = h_pq - 1/2 sum_k (pk|kq)`
/// absorbing the contraction left over from normal-ordering the two-electron
/// part into products of hops.
#[derive(Clone)]
pub struct AbInitioSpec {
    pub norb: usize,
    pub h_one: Vec<f64>,
    pub eri: TwoElectronIntegrals,
    pub core_energy: f64,
    pub n_up: usize,
    pub n_down: usize,
    hop_lists: Vec<Vec<usize>>,
}

impl AbInitioSpec {
    pub fn new(
        norb: usize,
        h_one: Vec<f64>,
        eri: TwoElectronIntegrals,
        core_energy: f64,
        n_up: usize,
        n_down: usize,
    ) -> Result<Self> {
        if h_one.len() != norb * norb {
            return Err(Error::invalid("one-electron integral matrix has wrong size"));
        }
        if n_up > norb || n_down > norb {
            return Err(Error::invalid("sector occupation exceeds orbital count"));
        }
        for i in 0..norb {
            for j in 0..norb {
                let (a, b) = (h_one[i * norb + j], h_one[j * norb + i]);
                if !a.is_finite() || (a - b).abs() > 1e-10 * (1.0 + a.abs()) {
                    return Err(Error::invalid("one-electron integrals not symmetric"));
                }
            }
        }
        let hop_lists = (0..norb).map(|i| (0..norb).filter(|&j| j != i).collect()).collect();
        Ok(AbInitioSpec { norb, h_one, eri, core_energy, n_up, n_down, hop_lists })
    }

    #[inline]
    pub fn h(&self, i: usize, j: usize) -> f64 {
        self.h_one[i * self.norb + j]
    }

    /// Effective one-body coefficients `t_ij = h_ij - 1/2 sum_k (ik|kj)`.
    pub fn effective_one_body(&self) -> Vec<f64> {
        let n = self.norb;
        let mut t = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut corr = 0.0;
                for k in 0..n {
                    corr += self.eri.get(i, k, k, j);
                }
                t[i * n + j] = self.h(i, j) - 0.5 * corr;
            }
        }
        t
    }
}

impl Hamiltonian for AbInitioSpec {
    fn num_sites(&self) -> usize {
        self.norb
    }

    fn local_dim(&self) -> usize {
        4
    }

    fn sector(&self) -> SectorSpec {
        SectorSpec::Fermion { n_up: self.n_up, n_down: self.n_down }
    }

    fn connected_elements(&self, x: &BasisConfig) -> Result<Vec<ConnectedElement>> {
        check_sector(&self.sector(), x, self.norb)?;
        let n = self.norb;
        let t = self.effective_one_body();
        let mut row = RowBuilder::new();
        row.diag = self.core_energy;

        let occ: [Vec<usize>; 2] = [
            (0..n).filter(|&s| x.has_up(s)).collect(),
            (0..n).filter(|&s| x.has_down(s)).collect(),
        ];

        // one-body hops with effective coefficients, restricted to
        // occupied -> {self, unoccupied}
        for (si, sigma) in [Spin::Up, Spin::Down].into_iter().enumerate() {
            for &b in &occ[si] {
                row.diag += t[b * n + b];
                for a in 0..n {
                    if a == b || sigma.occupies(x, a) {
                        continue;
                    }
                    let (y, sign) = apply_hops(x, &[(b, a, sigma)]).expect("restricted hop");
                    row.add_off(y, t[a * n + b] * sign);
                }
            }
        }

        // two-body hop products 1/2 (ab|cd) (c+_a c_b)(c+_c c_d), inner hop
        // applied first; both hops restricted to occupied -> available
        for (ti, tau) in [Spin::Up, Spin::Down].into_iter().enumerate() {
            for &d in &occ[ti] {
                for c in 0..n {
                    if c != d && tau.occupies(x, c) {
                        continue;
                    }
                    let mut s1 = FermionString::new(x);
                    s1.annihilate(d, tau).expect("occupied");
                    s1.create(c, tau).expect("available");
                    let (mid, sign1) = s1.finish();
                    for sigma in [Spin::Up, Spin::Down] {
                        for b in 0..n {
                            if !sigma.occupies(&mid, b) {
                                continue;
                            }
                            for a in 0..n {
                                if a != b && sigma.occupies(&mid, a) {
                                    continue;
                                }
                                let eri = self.eri.get(a, b, c, d);
                                if eri == 0.0 {
                                    continue;
                                }
                                let (y, sign2) =
                                    apply_hops(&mid, &[(b, a, sigma)]).expect("restricted hop");
                                let amp = 0.5 * eri * sign1 * sign2;
                                if y == *x {
                                    row.diag += amp;
                                } else {
                                    row.add_off(y, amp);
                                }
                            }
                        }
                    }
                }
            }
        }

        Ok(row.finish(x))
    }

    fn hop_neighbors(&self, site: usize) -> &[usize] {
        &self.hop_lists[site]
    }
}

// ---------------------------------------------------------------------------
// FCIDUMP parsing
// ---------------------------------------------------------------------------

/// Load an FCIDUMP file.
///
/// The namelist header is parsed for `NORB`, `NELEC` and `MS2` only. Integral
/// lines are `value i j k l` with 1-based indices in chemists' notation
/// `(ij|kl)`; `value i j 0 0` sets one-electron integrals, `value 0 0 0 0`
/// the core energy, and `value i 0 0 0` lines (orbital energies) are ignored.
pub fn load_fcidump(path: impl AsRef<Path>) -> Result<AbInitioSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_fcidump(&text)
}

pub fn parse_fcidump(text: &str) -> Result<AbInitioSpec> {
    let mut norb: Option<usize> = None;
    let mut nelec: Option<usize> = None;
    let mut ms2: i64 = 0;

    let mut lines = text.lines().enumerate();
    let mut header = String::new();
    let mut header_done = false;
    for (_i, line) in lines.by_ref() {
        header.push_str(line);
        header.push(' ');
        let upper = line.to_uppercase();
        if upper.contains("&END") || upper.trim_end().ends_with('/') {
            header_done = true;
            break;
        }
    }
    if !header_done {
        return Err(Error::Parse { line: 1, msg: "unterminated FCIDUMP namelist header".into() });
    }
    let cleaned = header.to_uppercase().replace(',', " ").replace('=', " = ");
    let tokens: Vec<&str> = cleaned.split_whitespace().collect();
    for w in tokens.windows(3) {
        if w[1] == "=" {
            match w[0] {
                "NORB" => {
                    norb = Some(w[2].parse().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad NORB value {:?}", w[2]),
                    })?)
                }
                "NELEC" => {
                    nelec = Some(w[2].parse().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad NELEC value {:?}", w[2]),
                    })?)
                }
                "MS2" => {
                    ms2 = w[2].parse().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad MS2 value {:?}", w[2]),
                    })?
                }
                _ => {}
            }
        }
    }
    let norb = norb.ok_or(Error::Parse { line: 1, msg: "header missing NORB".into() })?;
    let nelec = nelec.ok_or(Error::Parse { line: 1, msg: "header missing NELEC".into() })?;
    if ms2.unsigned_abs() as usize > nelec || (nelec as i64 + ms2) % 2 != 0 {
        return Err(Error::Parse {
            line: 1,
            msg: format!("inconsistent NELEC/MS2: {nelec}/{ms2}"),
        });
    }
    let n_up = ((nelec as i64 + ms2) / 2) as usize;
    let n_down = nelec - n_up;

    let mut h_one = vec![0.0; norb * norb];
    let mut eri = TwoElectronIntegrals::zeros(norb);
    let mut core = 0.0;

    for (i, line) in lines {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `value i j k l`, got {} fields", fields.len()),
            });
        }
        let value: f64 =
            fields[0].replace(['D', 'd'], "E").parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad value {:?}", fields[0]),
            })?;
        let mut idx = [0usize; 4];
        for (k, f) in fields[1..].iter().enumerate() {
            idx[k] = f.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad orbital index {f:?}"),
            })?;
            if idx[k] > norb {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("orbital index {} exceeds NORB = {norb}", idx[k]),
                });
            }
        }
        match idx {
            [0, 0, 0, 0] => core = value,
            [_, 0, 0, 0] => {} // orbital energies, ignored
            [p, q, 0, 0] => {
                h_one[(p - 1) * norb + (q - 1)] = value;
                h_one[(q - 1) * norb + (p - 1)] = value;
            }
            [p, q, r, s] => {
                if r == 0 || s == 0 {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "two-electron line with a single zero index".into(),
                    });
                }
                eri.set_sym(p - 1, q - 1, r - 1, s - 1, value);
            }
        }
    }
    AbInitioSpec::new(norb, h_one, eri, core, n_up, n_down)
}

/// Write the FCIDUMP equivalent of a Hubbard chain: `-t` hops on the
/// one-body off-diagonals, `U` on the `(ii|ii)` entries. Useful for
/// validating the file-index convention end to end.
pub fn hubbard_fcidump(
    l: usize,
    t: f64,
    u: f64,
    n_up: usize,
    n_down: usize,
    periodic: bool,
) -> String {
    let mut s = String::new();
    let nelec = n_up + n_down;
    let ms2 = n_up as i64 - n_down as i64;
    writeln!(s, "&FCI NORB={l}, NELEC={nelec}, MS2={ms2},").unwrap();
    writeln!(s, "&END").unwrap();
    for i in 0..l {
        writeln!(s, "{:.16e} {} {} {} {}", u, i + 1, i + 1, i + 1, i + 1).unwrap();
    }
    let last = if periodic && l > 2 { l } else { l - 1 };
    for i in 0..last {
        let j = (i + 1) % l;
        writeln!(s, "{:.16e} {} {} 0 0", -t, i + 1, j + 1).unwrap();
    }
    s
}
