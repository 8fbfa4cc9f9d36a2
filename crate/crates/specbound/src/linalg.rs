//! Dense complex-Hermitian eigendecomposition and inertia classification.
//!
//! The solver is cyclic Jacobi on the full matrix: simple, accurate at desk
//! scale (dim <= 200), and deterministic. Zero eigenvalues are classified
//! with a tolerance relative to the spectral radius (floor 1), so inertia is
//! stable under rescaling of the weights; the tolerance actually used is
//! recorded on the result.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default scale for the zero-eigenvalue threshold tau = scale * max(1, rho).
pub const DEFAULT_ZERO_SCALE: f64 = 1e-8;

const HERMITICITY_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix equal to its conjugate transpose, stored dense
/// row-major. Construction checks Hermiticity to 1e-12 per entry, then
/// symmetrizes exactly as (M + M*)/2, so the diagonal is exactly real.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidOrder("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut data = entries;
        for i in 0..dim {
            for j in i..dim {
                let a = data[i * dim + j];
                let b = data[j * dim + i];
                if (a - b.conj()).norm() > HERMITICITY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not Hermitian at ({i},{j}): {a} vs conj({b})"
                    )));
                }
                let avg = (a + b.conj()) / 2.0;
                data[i * dim + j] = avg;
                data[j * dim + i] = avg.conj();
            }
        }
        Ok(HermitianMatrix { dim, data })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        HermitianMatrix::new(dim, data)
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        HermitianMatrix::new(
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        HermitianMatrix::new(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
    }

    // For constructors whose output is Hermitian by construction.
    pub(crate) fn from_parts_unchecked(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        HermitianMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Trace; real because the diagonal is.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }
}

// JSON form: {"dim": n, "entries": [[re, im], ...]} row-major.
impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.data.iter().map(|z| [z.re, z.im]).collect();
        let mut s = serializer.serialize_struct("HermitianMatrix", 2)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("entries", &pairs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            entries: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let data = raw
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        HermitianMatrix::new(raw.dim, data).map_err(D::Error::custom)
    }
}

/// Eigenvalue sign counts of a Hermitian matrix, with the zero threshold
/// that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    pub tol: f64,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// n0 + min(n+, n-): the maximum dimension of a totally isotropic
    /// subspace, hence the inertia bound.
    pub fn isotropy_bound(&self) -> usize {
        self.n_zero + self.n_plus.min(self.n_minus)
    }
}

/// 0/1 adjacency matrix of g.
pub fn adjacency_matrix(g: &Graph) -> HermitianMatrix {
    let n = g.n();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, v) in g.edges() {
        data[u * n + v] = Complex64::new(1.0, 0.0);
        data[v * n + u] = Complex64::new(1.0, 0.0);
    }
    HermitianMatrix::from_parts_unchecked(n, data)
}

/// Laplacian L = D - A.
pub fn laplacian(g: &Graph) -> HermitianMatrix {
    let n = g.n();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (u, v) in g.edges() {
        data[u * n + v] = Complex64::new(-1.0, 0.0);
        data[v * n + u] = Complex64::new(-1.0, 0.0);
    }
    for v in 0..n {
        data[v * n + v] = Complex64::new(g.degree(v) as f64, 0.0);
    }
    HermitianMatrix::from_parts_unchecked(n, data)
}

/// Kronecker product m (x) I_d; index (i, a) -> i*d + a.
pub fn tensor_with_identity(m: &HermitianMatrix, d: usize) -> Result<HermitianMatrix> {
    if d == 0 {
        return Err(Error::InvalidParameters("tensor factor d must be >= 1".into()));
    }
    let n = m.dim();
    let nd = n
        .checked_mul(d)
        .ok_or_else(|| Error::SizeLimit("tensor dimension overflow".into()))?;
    let mut data = vec![Complex64::new(0.0, 0.0); nd * nd];
    for i in 0..n {
        for j in 0..n {
            let v = m.entry(i, j);
            for a in 0..d {
                data[(i * d + a) * nd + (j * d + a)] = v;
            }
        }
    }
    Ok(HermitianMatrix::from_parts_unchecked(nd, data))
}

/// All eigenvalues, ascending. Cyclic Jacobi with complex rotations; stops
/// when the off-diagonal Frobenius norm drops below 1e-12 * (1 + ||M||_F),
/// errors after 100 sweeps.
pub fn eigenvalues_hermitian(m: &HermitianMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a = m.data.clone();
    let threshold = 1e-12 * (1.0 + m.frobenius_norm());
    // Elements below this can be skipped without stalling convergence.
    let skip = threshold / (n as f64 + 1.0);

    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut residual = off(&a);
    let mut sweeps = 0;
    while residual >= threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::numerical(
                "Jacobi eigensolver did not converge",
                residual,
            ));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r < skip {
                    continue;
                }
                let omega = apq / r; // a_pq = r * omega
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_omega_bar = s * omega.conj();
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s_omega_bar * akq;
                    let new_q = s * akp + c * omega.conj() * akq;
                    a[k * n + p] = new_p;
                    a[k * n + q] = new_q;
                    a[p * n + k] = new_p.conj();
                    a[q * n + k] = new_q.conj();
                }
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
            }
        }
        sweeps += 1;
        residual = off(&a);
    }

    let mut evs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    evs.sort_unstable_by(f64::total_cmp);
    Ok(evs)
}

/// Sign counts with the default threshold scale.
pub fn inertia(m: &HermitianMatrix) -> Result<Inertia> {
    inertia_with_scale(m, DEFAULT_ZERO_SCALE)
}

/// Sign counts with tau = scale * max(1, spectral radius).
pub fn inertia_with_scale(m: &HermitianMatrix, scale: f64) -> Result<Inertia> {
    let evs = eigenvalues_hermitian(m)?;
    Ok(classify_eigenvalues(&evs, scale))
}

/// Classify an eigenvalue list into an [`Inertia`].
pub fn classify_eigenvalues(evs: &[f64], scale: f64) -> Inertia {
    let rho = evs.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let tol = scale * rho.max(1.0);
    let mut inertia = Inertia {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
        tol,
    };
    for &x in evs {
        if x > tol {
            inertia.n_plus += 1;
        } else if x < -tol {
            inertia.n_minus += 1;
        } else {
            inertia.n_zero += 1;
        }
    }
    inertia
}

// Small dense complex helpers shared with the certificate checks.
pub(crate) fn mat_mul(dim: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += aik * b[k * dim + j];
            }
        }
    }
    out
}

pub(crate) fn frob_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_folded_cube, make_kneser, make_paley};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn assert_close(actual: &[f64], expected: &[f64], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < tol, "{actual:?} vs {expected:?}");
        }
    }

    fn random_hermitian(rng: &mut StdRng, dim: usize) -> HermitianMatrix {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..dim {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                data[i * dim + j] = z;
                data[j * dim + i] = z.conj();
            }
        }
        HermitianMatrix::new(dim, data).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(HermitianMatrix::zeros(0).is_err());
        assert!(HermitianMatrix::from_real(2, &[0.0, 1.0]).is_err());
        // not Hermitian: off-diagonal pair disagrees
        assert!(HermitianMatrix::from_real(2, &[0.0, 1.0, 0.5, 0.0]).is_err());
        // complex diagonal is not Hermitian
        let bad = HermitianMatrix::new(
            1,
            vec![Complex64::new(0.0, 1.0)],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn small_spectra() {
        let zero = HermitianMatrix::zeros(4).unwrap();
        assert_close(&eigenvalues_hermitian(&zero).unwrap(), &[0.0; 4], 1e-14);

        let k2 = adjacency_matrix(&make_complete(2).unwrap());
        assert_close(&eigenvalues_hermitian(&k2).unwrap(), &[-1.0, 1.0], 1e-10);

        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = HermitianMatrix::new(
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        assert_close(&eigenvalues_hermitian(&m).unwrap(), &[1.0, 3.0], 1e-10);
    }

    #[test]
    fn cycle_spectra_match_closed_form() {
        for n in 3..=12usize {
            let a = adjacency_matrix(&make_cycle(n).unwrap());
            let got = eigenvalues_hermitian(&a).unwrap();
            let mut want: Vec<f64> = (0..n)
                .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos())
                .collect();
            want.sort_unstable_by(f64::total_cmp);
            assert_close(&got, &want, 1e-8);
        }
    }

    #[test]
    fn clebsch_spectrum() {
        let a = adjacency_matrix(&make_folded_cube(5).unwrap());
        let evs = eigenvalues_hermitian(&a).unwrap();
        let mut want = vec![-3.0; 5];
        want.extend(vec![1.0; 10]);
        want.push(5.0);
        assert_close(&evs, &want, 1e-8);
        let ine = inertia(&a).unwrap();
        assert_eq!((ine.n_plus, ine.n_zero, ine.n_minus), (11, 0, 5));
        assert_eq!(ine.isotropy_bound(), 5);
    }

    #[test]
    fn paley17_inertia() {
        let a = adjacency_matrix(&make_paley(17).unwrap());
        let ine = inertia(&a).unwrap();
        assert_eq!((ine.n_plus, ine.n_zero, ine.n_minus), (9, 0, 8));
        assert_eq!(ine.isotropy_bound(), 8);
    }

    #[test]
    fn zero_matrix_inertia_and_tol() {
        let ine = inertia(&HermitianMatrix::zeros(6).unwrap()).unwrap();
        assert_eq!((ine.n_plus, ine.n_zero, ine.n_minus), (0, 6, 0));
        assert_eq!(ine.tol, DEFAULT_ZERO_SCALE); // floor max(1, rho) = 1
        assert_eq!(ine.rank(), 0);
    }

    #[test]
    fn laplacian_values() {
        let l2 = laplacian(&make_complete(2).unwrap());
        assert_close(&eigenvalues_hermitian(&l2).unwrap(), &[0.0, 2.0], 1e-10);

        let lc4 = laplacian(&make_cycle(4).unwrap());
        assert_close(
            &eigenvalues_hermitian(&lc4).unwrap(),
            &[0.0, 2.0, 2.0, 4.0],
            1e-8,
        );

        let lp = laplacian(&make_kneser(5, 2).unwrap());
        for i in 0..lp.dim() {
            let row: Complex64 = (0..lp.dim()).map(|j| lp.entry(i, j)).sum();
            assert!(row.norm() < 1e-14);
        }
    }

    #[test]
    fn tensor_with_identity_inertia() {
        let k2 = adjacency_matrix(&make_complete(2).unwrap());
        assert_eq!(tensor_with_identity(&k2, 1).unwrap(), k2);

        let t3 = tensor_with_identity(&k2, 3).unwrap();
        let ine = inertia(&t3).unwrap();
        assert_eq!((ine.n_plus, ine.n_zero, ine.n_minus), (3, 0, 3));

        let c5 = adjacency_matrix(&make_cycle(5).unwrap());
        let t2 = tensor_with_identity(&c5, 2).unwrap();
        let ine = inertia(&t2).unwrap();
        assert_eq!((ine.n_plus, ine.n_zero, ine.n_minus), (6, 0, 4));

        assert!(tensor_with_identity(&k2, 0).is_err());
    }

    #[test]
    fn trace_and_frobenius_identities() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let dim = rng.gen_range(1..=10);
            let m = random_hermitian(&mut rng, dim);
            let evs = eigenvalues_hermitian(&m).unwrap();
            let sum: f64 = evs.iter().sum();
            assert!((sum - m.trace()).abs() < 1e-8 * dim as f64);
            let sq: f64 = evs.iter().map(|x| x * x).sum();
            let fro = m.frobenius_norm();
            assert!((sq - fro * fro).abs() < 1e-8 * dim as f64);
        }
    }

    #[test]
    fn sylvester_congruence_preserves_inertia() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let dim = rng.gen_range(1..=10);
            let m = random_hermitian(&mut rng, dim);
            // S = I + R/(2 dim) has spectral radius of the perturbation < 1,
            // hence is invertible.
            let mut s = vec![Complex64::new(0.0, 0.0); dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    let r = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    s[i * dim + j] = r / (2.0 * dim as f64);
                }
                s[i * dim + i] += 1.0;
            }
            let s_adj: Vec<Complex64> = {
                let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        out[i * dim + j] = s[j * dim + i].conj();
                    }
                }
                out
            };
            let congruent = mat_mul(dim, &s_adj, &mat_mul(dim, m.entries(), &s));
            let cm = HermitianMatrix::new(dim, congruent).unwrap();
            let a = inertia(&m).unwrap();
            let b = inertia(&cm).unwrap();
            assert_eq!(
                (a.n_plus, a.n_zero, a.n_minus),
                (b.n_plus, b.n_zero, b.n_minus)
            );
        }
    }

    #[test]
    fn serde_round_trip() {
        let m = HermitianMatrix::new(
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, -0.25),
                Complex64::new(0.5, 0.25),
                Complex64::new(-2.0, 0.0),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: HermitianMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);

        let bad = r#"{"dim": 2, "entries": [[0.0,0.0],[1.0,0.0],[0.5,0.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<HermitianMatrix>(bad).is_err());
    }
}
