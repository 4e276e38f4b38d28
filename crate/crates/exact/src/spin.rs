//! Dense diagonalization of small Heisenberg lattices.
//!
//! The Hamiltonian H = (1/4) sum_edges (XX + YY + ZZ) is assembled directly
//! in the computational basis without any symbolic machinery: per edge the
//! diagonal picks up (1/4)(-1)^(b_a + b_b) and states whose two edge bits
//! differ couple to the double flip with weight 1/2. Everything stays real.

use ncopt_linalg::{eigh, eigvalsh, matmul, Mat};

/// Interaction graph of a spin-1/2 lattice.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub n_sites: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Lattice {
    /// Periodic chain of `n` sites.
    pub fn ring(n: usize) -> Lattice {
        assert!(n >= 3);
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Lattice { n_sites: n, edges }
    }

    /// Periodic `l x l` square lattice; each site bonds right and down.
    pub fn torus(l: usize) -> Lattice {
        assert!(l >= 2);
        let idx = |r: usize, c: usize| (r % l) * l + (c % l);
        let mut edges = Vec::with_capacity(2 * l * l);
        for r in 0..l {
            for c in 0..l {
                edges.push((idx(r, c), idx(r, c + 1)));
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
        Lattice { n_sites: l * l, edges }
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_sites
    }
}

/// Dense H = (1/4) sum_edges (X_a X_b + Y_a Y_b + Z_a Z_b).
pub fn heisenberg_hamiltonian(lat: &Lattice) -> Mat {
    let dim = lat.dim();
    let mut h = Mat::zeros(dim, dim);
    for &(a, b) in &lat.edges {
        assert!(a != b && a < lat.n_sites && b < lat.n_sites);
        let mask = (1usize << a) | (1usize << b);
        for j in 0..dim {
            let same = ((j >> a) ^ (j >> b)) & 1 == 0;
            h[(j, j)] += if same { 0.25 } else { -0.25 };
            if !same {
                h[(j ^ mask, j)] += 0.5;
            }
        }
    }
    h
}

/// Diagonal of the total magnetization sum_i Z_i.
pub fn magnetization_diagonal(lat: &Lattice) -> Vec<f64> {
    let dim = lat.dim();
    (0..dim)
        .map(|j| {
            let ones = (j & (dim - 1)).count_ones() as f64;
            lat.n_sites as f64 - 2.0 * ones
        })
        .collect()
}

/// Full spectrum and eigenbasis of a Hermitian (real symmetric) matrix.
pub struct GroundData {
    pub evals: Vec<f64>,
    pub evecs: Mat,
}

impl GroundData {
    pub fn new(h: &Mat) -> GroundData {
        let (evals, evecs) = eigh(h).expect("symmetric eigensolve failed");
        GroundData { evals, evecs }
    }

    pub fn ground_energy(&self) -> f64 {
        self.evals[0]
    }

    /// Indices of eigenvalues within the degeneracy tolerance of the bottom.
    fn ground_indices(&self) -> Vec<usize> {
        let e0 = self.evals[0];
        let tol = 1e-8 + 1e-9 * e0.abs().max(1.0);
        self.evals
            .iter()
            .enumerate()
            .take_while(|(_, &e)| e - e0 < tol)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.ground_indices().len()
    }

    /// Extremal eigenvalues of a diagonal observable compressed onto the
    /// ground space. Degenerate ground spaces make the plain expectation
    /// value ill-defined; the attainable range is what a bound can certify.
    pub fn ground_range_of_diagonal(&self, diag: &[f64]) -> (f64, f64) {
        let gidx = self.ground_indices();
        let k = gidx.len();
        let dim = self.evecs.rows();
        let mut scaled = Mat::zeros(dim, k);
        let mut basis = Mat::zeros(dim, k);
        for (col, &gi) in gidx.iter().enumerate() {
            for r in 0..dim {
                let v = self.evecs[(r, gi)];
                basis[(r, col)] = v;
                scaled[(r, col)] = diag[r] * v;
            }
        }
        let block = matmul(&basis.transpose(), &scaled);
        let vals = eigvalsh(&block).expect("projected eigensolve failed");
        (vals[0], vals[k - 1])
    }
}

/// Ground energy per site of the Heisenberg model on `lat`.
pub fn heisenberg_energy_per_site(lat: &Lattice) -> f64 {
    GroundData::new(&heisenberg_hamiltonian(lat)).ground_energy() / lat.n_sites as f64
}

/// Range of the per-site magnetization over the Heisenberg ground space,
/// plus the ground degeneracy.
pub fn heisenberg_magnetization_per_site(lat: &Lattice) -> (f64, f64, usize) {
    let gd = GroundData::new(&heisenberg_hamiltonian(lat));
    let diag = magnetization_diagonal(lat);
    let (lo, hi) = gd.ground_range_of_diagonal(&diag);
    let n = lat.n_sites as f64;
    (lo / n, hi / n, gd.ground_degeneracy())
}
