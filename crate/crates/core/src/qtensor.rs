//! Dense complex linear maps between qubit spaces.
//!
//! A [`QTensor`] with `n_in` inputs and `n_out` outputs is stored as a
//! `2^n_out × 2^n_in` matrix in row-major order: the flat index of the entry
//! for output basis state `o` and input basis state `i` is `o · 2^n_in + i`.
//! Basis states of `k` qubits are ordered big-endian, so qubit 0 is the most
//! significant bit (`|0..0⟩, |0..01⟩, …, |1..1⟩`).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex amplitude or matrix entry.
pub type ComplexScalar = C64;

/// Default relative tolerance for proportionality and rank decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A dense linear map `(C^2)^{⊗n_in} → (C^2)^{⊗n_out}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QTensor {
    n_in: usize,
    n_out: usize,
    data: Vec<C64>,
}

impl QTensor {
    pub fn new(n_in: usize, n_out: usize, data: Vec<C64>) -> Result<Self> {
        let want = 1usize << (n_in + n_out);
        if data.len() != want {
            return Err(Error::Dimension(format!(
                "{}→{} tensor needs {} entries, got {}",
                n_in,
                n_out,
                want,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("tensor entries must be finite".into()));
        }
        Ok(Self { n_in, n_out, data })
    }

    pub fn zeros(n_in: usize, n_out: usize) -> Self {
        Self {
            n_in,
            n_out,
            data: vec![C64::new(0.0, 0.0); 1 << (n_in + n_out)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let dim = 1usize << n;
        let mut t = Self::zeros(n, n);
        for k in 0..dim {
            t.data[k * dim + k] = C64::new(1.0, 0.0);
        }
        t
    }

    pub fn scalar(z: C64) -> Self {
        Self {
            n_in: 0,
            n_out: 0,
            data: vec![z],
        }
    }

    /// A state (`n_in = 0`) from its amplitudes.
    pub fn state(amplitudes: Vec<C64>) -> Result<Self> {
        let n = log2_exact(amplitudes.len())?;
        Self::new(0, n, amplitudes)
    }

    /// An effect (`n_out = 0`) from its coefficients.
    pub fn effect(coefficients: Vec<C64>) -> Result<Self> {
        let n = log2_exact(coefficients.len())?;
        Self::new(n, 0, coefficients)
    }

    /// Computational basis state `|bits⟩`, with `bits[0]` the most significant qubit.
    pub fn basis_state(bits: &[u8]) -> Self {
        let n = bits.len();
        let idx = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        let mut t = Self::zeros(0, n);
        t.data[idx] = C64::new(1.0, 0.0);
        t
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn rows(&self) -> usize {
        1 << self.n_out
    }

    pub fn cols(&self) -> usize {
        1 << self.n_in
    }

    /// Entry for output basis index `row` and input basis index `col`.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.cols() + col]
    }

    pub fn is_state(&self) -> bool {
        self.n_in == 0
    }

    /// The single entry of a scalar (0→0) tensor.
    pub fn as_scalar(&self) -> Option<C64> {
        (self.n_in == 0 && self.n_out == 0).then(|| self.data[0])
    }

    pub fn scale(&self, z: C64) -> Self {
        Self {
            n_in: self.n_in,
            n_out: self.n_out,
            data: self.data.iter().map(|x| x * z).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            n_in: self.n_in,
            n_out: self.n_out,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            n_in: self.n_in,
            n_out: self.n_out,
            data,
        })
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hilbert–Schmidt inner product `⟨self, other⟩ = Σ conj(self)·other`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Degenerate("cannot normalize the zero tensor".into()));
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    /// Swap inputs and outputs without conjugating.
    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows(), self.cols());
        let mut data = vec![C64::new(0.0, 0.0); r * c];
        for i in 0..r {
            for j in 0..c {
                data[j * r + i] = self.data[i * c + j];
            }
        }
        Self {
            n_in: self.n_out,
            n_out: self.n_in,
            data,
        }
    }

    /// Reinterpret the same data with a different in/out split of the legs.
    ///
    /// Leg order is outputs followed by inputs, so moving legs between the two
    /// groups only changes which of them are counted as outputs.
    pub fn reshape(&self, n_in: usize, n_out: usize) -> Result<Self> {
        if n_in + n_out != self.n_in + self.n_out {
            return Err(Error::Dimension(format!(
                "cannot reshape {}→{} into {}→{}",
                self.n_in, self.n_out, n_in, n_out
            )));
        }
        Ok(Self {
            n_in,
            n_out,
            data: self.data.clone(),
        })
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows(), self.cols(), &self.data)
    }

    pub fn from_matrix(n_in: usize, n_out: usize, m: &DMatrix<C64>) -> Result<Self> {
        if m.nrows() != 1 << n_out || m.ncols() != 1 << n_in {
            return Err(Error::Dimension(format!(
                "{}×{} matrix is not a {}→{} tensor",
                m.nrows(),
                m.ncols(),
                n_in,
                n_out
            )));
        }
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                data.push(m[(i, j)]);
            }
        }
        Self::new(n_in, n_out, data)
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.to_matrix().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n_in != other.n_in || self.n_out != other.n_out {
            return Err(Error::Dimension(format!(
                "{}→{} vs {}→{}",
                self.n_in, self.n_out, other.n_in, other.n_out
            )));
        }
        Ok(())
    }
}

fn log2_exact(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::Dimension(format!("{len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Sequential composition `f ∘ g` (apply `g` first).
pub fn compose(f: &QTensor, g: &QTensor) -> Result<QTensor> {
    if f.n_in != g.n_out {
        return Err(Error::Dimension(format!(
            "cannot compose {}→{} after {}→{}",
            f.n_in, f.n_out, g.n_in, g.n_out
        )));
    }
    let (r, k, c) = (f.rows(), f.cols(), g.cols());
    let mut data = vec![C64::new(0.0, 0.0); r * c];
    for i in 0..r {
        for m in 0..k {
            let a = f.data[i * k + m];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..c {
                data[i * c + j] += a * g.data[m * c + j];
            }
        }
    }
    Ok(QTensor {
        n_in: g.n_in,
        n_out: f.n_out,
        data,
    })
}

/// Parallel composition `f ⊗ g`; `f` occupies the more significant qubits.
pub fn tensor_product(f: &QTensor, g: &QTensor) -> QTensor {
    let (fr, fc, gr, gc) = (f.rows(), f.cols(), g.rows(), g.cols());
    let cols = fc * gc;
    let mut data = vec![C64::new(0.0, 0.0); fr * gr * cols];
    for i1 in 0..fr {
        for j1 in 0..fc {
            let a = f.data[i1 * fc + j1];
            for i2 in 0..gr {
                for j2 in 0..gc {
                    data[(i1 * gr + i2) * cols + j1 * gc + j2] = a * g.data[i2 * gc + j2];
                }
            }
        }
    }
    QTensor {
        n_in: f.n_in + g.n_in,
        n_out: f.n_out + g.n_out,
        data,
    }
}

/// Conjugate transpose.
pub fn dagger(f: &QTensor) -> QTensor {
    let t = f.transpose();
    conjugate(&t)
}

/// Entrywise complex conjugation in the computational basis.
pub fn conjugate(f: &QTensor) -> QTensor {
    QTensor {
        n_in: f.n_in,
        n_out: f.n_out,
        data: f.data.iter().map(|z| z.conj()).collect(),
    }
}

/// Least-squares fit of `f ≈ λ·g`, returning `λ` and the relative deviation
/// `‖f − λg‖ / max(‖f‖, ‖g‖)`.
///
/// Zero tensors follow fixed conventions: two zero tensors fit with `λ = 1`
/// and deviation 0; a zero tensor never fits a nonzero one (deviation 1).
pub fn proportional_fit(f: &QTensor, g: &QTensor, tol: f64) -> Result<(C64, f64)> {
    f.check_same_shape(g)?;
    let (nf, ng) = (f.norm(), g.norm());
    let m = nf.max(ng);
    if m == 0.0 {
        return Ok((C64::new(1.0, 0.0), 0.0));
    }
    if nf <= tol * m || ng <= tol * m {
        // Exactly one side is negligible.
        let lam = if ng > 0.0 {
            C64::new(0.0, 0.0)
        } else {
            C64::new(f64::INFINITY, 0.0)
        };
        return Ok((lam, 1.0));
    }
    let lam = g.inner(f)? / (ng * ng);
    let resid: f64 = f
        .data
        .iter()
        .zip(&g.data)
        .map(|(a, b)| (a - lam * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((lam, resid / m))
}

/// `Some(λ)` with `f = λ·g` up to relative deviation `tol`, `None` otherwise.
pub fn proportional_eq(f: &QTensor, g: &QTensor, tol: f64) -> Result<Option<C64>> {
    let (lam, dev) = proportional_fit(f, g, tol)?;
    Ok((dev <= tol).then_some(lam))
}

/// Partial trace of `|ψ⟩⟨ψ|` onto the qubits in `keep`, in ascending qubit order.
pub fn reduced_density(state: &QTensor, keep: &[usize]) -> Result<QTensor> {
    if !state.is_state() {
        return Err(Error::Argument(
            "reduced_density needs a state (n_in = 0)".into(),
        ));
    }
    let n = state.n_out;
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::Argument("keep set must be non-empty".into()));
    }
    if let Some(&q) = keep.iter().find(|&&q| q >= n) {
        return Err(Error::Argument(format!(
            "qubit {q} out of range for a {n}-qubit state"
        )));
    }
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let (k, r) = (keep.len(), rest.len());
    let dk = 1usize << k;
    let mut rho = vec![C64::new(0.0, 0.0); dk * dk];
    let split = |idx: usize| -> (usize, usize) {
        let bit = |q: usize| (idx >> (n - 1 - q)) & 1;
        let a = keep.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        let b = rest.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        (a, b)
    };
    // Group amplitudes by the traced-out configuration.
    let mut table = vec![C64::new(0.0, 0.0); dk << r];
    for (idx, amp) in state.data.iter().enumerate() {
        let (a, b) = split(idx);
        table[(b << k) | a] = *amp;
    }
    for b in 0..(1usize << r) {
        let block = &table[b << k..(b + 1) << k];
        for i in 0..dk {
            if block[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..dk {
                rho[i * dk + j] += block[i] * block[j].conj();
            }
        }
    }
    QTensor::new(k, k, rho)
}

/// Number of singular values above `tol × σ_max`; zero for the zero tensor.
pub fn matrix_rank(f: &QTensor, tol: f64) -> usize {
    let sv = f.singular_values();
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Schmidt rank of a state across the bipartition `part | rest`.
pub fn schmidt_rank(state: &QTensor, part: &[usize], tol: f64) -> Result<usize> {
    let m = bipartition_matrix(state, part)?;
    Ok(matrix_rank(&m, tol))
}

/// The state regrouped as a matrix whose rows index the qubits in `part`.
pub fn bipartition_matrix(state: &QTensor, part: &[usize]) -> Result<QTensor> {
    if !state.is_state() {
        return Err(Error::Argument(
            "bipartition needs a state (n_in = 0)".into(),
        ));
    }
    let n = state.n_out;
    let mut part: Vec<usize> = part.to_vec();
    part.sort_unstable();
    part.dedup();
    if part.iter().any(|&q| q >= n) {
        return Err(Error::Argument("bipartition qubit out of range".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|q| !part.contains(q)).collect();
    let (k, r) = (part.len(), rest.len());
    let mut data = vec![C64::new(0.0, 0.0); 1 << n];
    for (idx, amp) in state.data.iter().enumerate() {
        let bit = |q: usize| (idx >> (n - 1 - q)) & 1;
        let a = part.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        let b = rest.iter().fold(0, |acc, &q| (acc << 1) | bit(q));
        data[(a << r) | b] = *amp;
    }
    QTensor::new(r, k, data)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &QTensor) -> Result<Vec<f64>> {
    if m.n_in != m.n_out {
        return Err(Error::Dimension("eigenvalues need a square tensor".into()));
    }
    let eig = SymmetricEigen::new(m.to_matrix());
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Square root of a positive semidefinite Hermitian matrix; negative
/// eigenvalues from rounding are clamped to zero.
pub fn psd_sqrt(m: &QTensor) -> Result<QTensor> {
    if m.n_in != m.n_out {
        return Err(Error::Dimension(
            "matrix square root needs a square tensor".into(),
        ));
    }
    let eig = SymmetricEigen::new(m.to_matrix());
    let d = eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    let root = v * DMatrix::from_diagonal(&d) * v.adjoint();
    QTensor::from_matrix(m.n_in, m.n_out, &root)
}

/// Determinant of a square tensor viewed as a matrix.
pub fn determinant(m: &QTensor) -> Result<C64> {
    if m.n_in != m.n_out {
        return Err(Error::Dimension("determinant needs a square tensor".into()));
    }
    Ok(m.to_matrix().determinant())
}

/// On-disk representation: `{"n_in": .., "n_out": .., "data": [[re, im], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorDoc {
    pub n_in: usize,
    pub n_out: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&QTensor> for TensorDoc {
    fn from(t: &QTensor) -> Self {
        Self {
            n_in: t.n_in,
            n_out: t.n_out,
            data: t.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<TensorDoc> for QTensor {
    type Error = Error;

    fn try_from(doc: TensorDoc) -> Result<Self> {
        let data = doc.data.iter().map(|p| C64::new(p[0], p[1])).collect();
        QTensor::new(doc.n_in, doc.n_out, data).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl QTensor {
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&TensorDoc::from(self)).expect("tensor serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TensorDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }
}
