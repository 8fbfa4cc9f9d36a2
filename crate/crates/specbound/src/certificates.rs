//! Quantum-independence certificates and projective packings.
//!
//! A certificate for quantum independence value `t` is a family of orthogonal
//! projectors `P^(u,i)` (vertex `u`, slot `i < t`) satisfying per-slot
//! completeness and two trace-orthogonality conditions. A projective packing
//! drops the slots and keeps one projector per vertex with trace-orthogonality
//! across edges; its value is the rank sum divided by the dimension. This
//! module verifies such families, embeds classical independent sets as `d = 1`
//! certificates, collapses certificates to packings, and checks the isotropy
//! property that links packings to the weighted inertia bound.
//!
//! Verification only: nothing here searches for certificates, because no
//! general algorithm for that exists and packing values can be irrational.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::validate_weight_matrix;
use crate::error::{Error, Result};
use crate::exact::IndependentSetWitness;
use crate::graph::Graph;
use crate::linalg::{frob_norm, mat_mul, tensor_with_identity, HermitianMatrix};

/// Frobenius tolerance for the projector property `P^2 = P`.
pub const PROJECTOR_TOL: f64 = 1e-8;
/// Residual threshold for completeness and trace-orthogonality conditions.
pub const CERT_TOL: f64 = 1e-8;
/// How far a projector trace may sit from the nearest integer rank.
pub const RANK_TOL: f64 = 1e-6;
/// Threshold for the composite-vector Gram and quadratic-form checks.
pub const ISOTROPY_TOL: f64 = 1e-7;

// Pivot cutoff when extracting a range basis from projector columns. Projector
// spectra sit within PROJECTOR_TOL of {0, 1}, so residual column norms are
// either near 1 or near 0 and any cutoff well inside that gap works.
const RANGE_PIVOT_TOL: f64 = 1e-4;

/// Key of one projector in a family: always a vertex for stored entries, with
/// the slot index present in quantum certificates and absent in packings.
/// Violations reuse the type with `vertex: None` for per-slot conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyKey {
    pub vertex: Option<usize>,
    pub index: Option<usize>,
}

impl FamilyKey {
    pub fn packing(vertex: usize) -> Self {
        FamilyKey {
            vertex: Some(vertex),
            index: None,
        }
    }

    pub fn quantum(vertex: usize, index: usize) -> Self {
        FamilyKey {
            vertex: Some(vertex),
            index: Some(index),
        }
    }

    fn slice(index: usize) -> Self {
        FamilyKey {
            vertex: None,
            index: Some(index),
        }
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vertex, self.index) {
            (Some(u), Some(i)) => write!(f, "(u={u}, i={i})"),
            (Some(u), None) => write!(f, "(u={u})"),
            (None, Some(i)) => write!(f, "(i={i})"),
            (None, None) => write!(f, "(-)"),
        }
    }
}

/// A family of orthogonal projectors of a common dimension `d`, keyed by
/// vertex and optional slot. Missing keys are treated as zero matrices
/// everywhere, which are valid projectors. Each inserted matrix is validated
/// to satisfy `P^2 = P` within [`PROJECTOR_TOL`] in Frobenius norm.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorFamily {
    d: usize,
    entries: BTreeMap<FamilyKey, HermitianMatrix>,
}

impl ProjectorFamily {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameters(
                "projector dimension must be at least 1".into(),
            ));
        }
        Ok(ProjectorFamily {
            d,
            entries: BTreeMap::new(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Insert `P^(vertex, index)`, validating dimension and idempotency.
    /// Re-inserting an existing key is rejected.
    pub fn insert(
        &mut self,
        vertex: usize,
        index: Option<usize>,
        matrix: HermitianMatrix,
    ) -> Result<()> {
        if matrix.dim() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "projector is {}x{} but the family has d = {}",
                matrix.dim(),
                matrix.dim(),
                self.d
            )));
        }
        let residual = idempotency_residual(&matrix);
        if residual >= PROJECTOR_TOL {
            return Err(Error::InvalidInput(format!(
                "matrix at (u={vertex}, i={index:?}) is not a projector: \
                 |P^2 - P|_F = {residual:.3e}"
            )));
        }
        let key = FamilyKey {
            vertex: Some(vertex),
            index,
        };
        if self.entries.contains_key(&key) {
            return Err(Error::InvalidInput(format!("duplicate entry at {key}")));
        }
        self.entries.insert(key, matrix);
        Ok(())
    }

    pub fn get(&self, vertex: usize, index: Option<usize>) -> Option<&HermitianMatrix> {
        self.entries.get(&FamilyKey {
            vertex: Some(vertex),
            index,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FamilyKey, &HermitianMatrix)> {
        self.entries.iter()
    }

    /// Serialize as `{"d": .., "entries": [{"vertex", "index"?, "re", "im"}]}`
    /// with row-major `d x d` real and imaginary parts.
    pub fn to_json_string(&self) -> String {
        let entries = self
            .entries
            .iter()
            .map(|(key, m)| {
                let d = self.d;
                let mut re = vec![vec![0.0; d]; d];
                let mut im = vec![vec![0.0; d]; d];
                for i in 0..d {
                    for j in 0..d {
                        re[i][j] = m.entry(i, j).re;
                        im[i][j] = m.entry(i, j).im;
                    }
                }
                JsonEntry {
                    vertex: key.vertex.expect("stored keys always carry a vertex"),
                    index: key.index,
                    re,
                    im: Some(im),
                }
            })
            .collect();
        let doc = JsonFamily { d: self.d, entries };
        serde_json::to_string_pretty(&doc).expect("projector family serialization cannot fail")
    }

    /// Parse the JSON schema produced by [`Self::to_json_string`]. An absent
    /// `im` means a real matrix; every matrix is re-validated on insert.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: JsonFamily =
            serde_json::from_str(text).map_err(|e| Error::parse(0, e.to_string()))?;
        let mut fam = ProjectorFamily::new(doc.d)?;
        for entry in doc.entries {
            let matrix = matrix_from_parts(doc.d, &entry.re, entry.im.as_deref())?;
            fam.insert(entry.vertex, entry.index, matrix)?;
        }
        Ok(fam)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonFamily {
    d: usize,
    entries: Vec<JsonEntry>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    vertex: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    im: Option<Vec<Vec<f64>>>,
}

fn matrix_from_parts(d: usize, re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<HermitianMatrix> {
    let shape_ok =
        |rows: &[Vec<f64>]| rows.len() == d && rows.iter().all(|row| row.len() == d);
    if !shape_ok(re) || im.is_some_and(|rows| !shape_ok(rows)) {
        return Err(Error::InvalidInput(format!(
            "matrix parts must be {d}x{d} nested arrays"
        )));
    }
    let mut data = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let imag = im.map_or(0.0, |rows| rows[i][j]);
            data.push(Complex64::new(re[i][j], imag));
        }
    }
    HermitianMatrix::new(d, data)
}

fn idempotency_residual(m: &HermitianMatrix) -> f64 {
    let d = m.dim();
    let mut sq = mat_mul(d, m.entries(), m.entries());
    for (s, e) in sq.iter_mut().zip(m.entries()) {
        *s -= e;
    }
    frob_norm(&sq)
}

/// One failed certificate condition: which condition, the key or key pair it
/// concerns, and the offending residual.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub condition: String,
    pub first: FamilyKey,
    pub second: FamilyKey,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.second {
            write!(
                f,
                "{} at {}: residual {:.3e}",
                self.condition, self.first, self.residual
            )
        } else {
            write!(
                f,
                "{} at {} / {}: residual {:.3e}",
                self.condition, self.first, self.second, self.residual
            )
        }
    }
}

/// Outcome of verifying a certificate or packing. `value` is the packing
/// value (rank sum over dimension) when the check produces one.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateVerdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub value: Option<f64>,
}

impl CertificateVerdict {
    fn from_violations(violations: Vec<Violation>, value: Option<f64>) -> Self {
        CertificateVerdict {
            valid: violations.is_empty(),
            violations,
            value,
        }
    }
}

/// `tr(X^dagger Y)`, the trace (Hilbert-Schmidt) inner product.
pub fn trace_inner_product(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Complex64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(format!(
            "trace inner product of a {}-dim and a {}-dim matrix",
            x.dim(),
            y.dim()
        )));
    }
    let sum = x
        .entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(sum)
}

/// Check a quantum-independence certificate of value `t`: per-slot
/// completeness, same-vertex orthogonality across distinct slots, and
/// edge orthogonality across distinct slots. Missing keys count as zero.
pub fn verify_quantum_certificate(
    g: &Graph,
    t: usize,
    fam: &ProjectorFamily,
) -> Result<CertificateVerdict> {
    let n = g.n();
    let d = fam.d();
    let mut per_vertex: Vec<Vec<(usize, &HermitianMatrix)>> = vec![Vec::new(); n];
    for (key, m) in fam.iter() {
        let (u, i) = match (key.vertex, key.index) {
            (Some(u), Some(i)) => (u, i),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "quantum certificates are keyed by (vertex, slot); found {key}"
                )))
            }
        };
        if u >= n {
            return Err(Error::InvalidInput(format!(
                "vertex {u} out of range for a graph on {n} vertices"
            )));
        }
        if i >= t {
            return Err(Error::InvalidInput(format!(
                "slot {i} out of range for a certificate of value {t}"
            )));
        }
        per_vertex[u].push((i, m));
    }

    let mut violations = Vec::new();

    // Completeness: each slot's projectors sum to the identity.
    for i in 0..t {
        let mut sum = vec![Complex64::new(0.0, 0.0); d * d];
        for slots in &per_vertex {
            for &(j, m) in slots {
                if j == i {
                    for (s, e) in sum.iter_mut().zip(m.entries()) {
                        *s += e;
                    }
                }
            }
        }
        for k in 0..d {
            sum[k * d + k] -= Complex64::new(1.0, 0.0);
        }
        let residual = frob_norm(&sum);
        if residual >= CERT_TOL {
            violations.push(Violation {
                condition: "completeness".into(),
                first: FamilyKey::slice(i),
                second: FamilyKey::slice(i),
                residual,
            });
        }
    }

    // Same-vertex orthogonality for distinct slots.
    for (u, slots) in per_vertex.iter().enumerate() {
        for (a, &(i, p)) in slots.iter().enumerate() {
            for &(j, q) in &slots[a + 1..] {
                let residual = trace_inner_product(p, q)?.norm();
                if residual >= CERT_TOL {
                    violations.push(Violation {
                        condition: "vertex-orthogonality".into(),
                        first: FamilyKey::quantum(u, i.min(j)),
                        second: FamilyKey::quantum(u, i.max(j)),
                        residual,
                    });
                }
            }
        }
    }

    // Edge orthogonality, again only across distinct slots.
    for (u, v) in g.edges() {
        for &(i, p) in &per_vertex[u] {
            for &(j, q) in &per_vertex[v] {
                if i == j {
                    continue;
                }
                let residual = trace_inner_product(p, q)?.norm();
                if residual >= CERT_TOL {
                    violations.push(Violation {
                        condition: "edge-orthogonality".into(),
                        first: FamilyKey::quantum(u, i),
                        second: FamilyKey::quantum(v, j),
                        residual,
                    });
                }
            }
        }
    }

    Ok(CertificateVerdict::from_violations(violations, None))
}

/// Embed a classical independent set as a `d = 1` certificate: slot `i` puts
/// the scalar projector 1 on the i-th witness vertex and 0 everywhere else.
pub fn classical_certificate(g: &Graph, s: &IndependentSetWitness) -> Result<ProjectorFamily> {
    let n = g.n();
    if s.vertices.len() != s.size {
        return Err(Error::InvalidInput(
            "witness size disagrees with its vertex list".into(),
        ));
    }
    let mut seen = vec![false; n];
    for &u in &s.vertices {
        if u >= n {
            return Err(Error::InvalidInput(format!(
                "witness vertex {u} out of range for a graph on {n} vertices"
            )));
        }
        if seen[u] {
            return Err(Error::InvalidInput(format!("witness repeats vertex {u}")));
        }
        seen[u] = true;
    }
    for (a, &u) in s.vertices.iter().enumerate() {
        for &v in &s.vertices[a + 1..] {
            if g.has_edge(u, v) {
                return Err(Error::InvalidInput(format!(
                    "witness is not independent: {u} and {v} are adjacent"
                )));
            }
        }
    }
    let mut fam = ProjectorFamily::new(1)?;
    let one = HermitianMatrix::from_real(1, &[1.0])?;
    for (i, &u) in s.vertices.iter().enumerate() {
        fam.insert(u, Some(i), one.clone())?;
    }
    Ok(fam)
}

/// Collapse a verified certificate of value `t` into a packing by summing each
/// vertex's projectors across slots. The result is a valid packing whose value
/// is exactly `t`.
pub fn collapse_to_packing(
    g: &Graph,
    t: usize,
    fam: &ProjectorFamily,
) -> Result<ProjectorFamily> {
    let verdict = verify_quantum_certificate(g, t, fam)?;
    if !verdict.valid {
        let first = &verdict.violations[0];
        return Err(Error::InvalidInput(format!(
            "cannot collapse an invalid certificate ({} violation{}; first: {first})",
            verdict.violations.len(),
            if verdict.violations.len() == 1 { "" } else { "s" },
        )));
    }
    let d = fam.d();
    let mut sums: BTreeMap<usize, Vec<Complex64>> = BTreeMap::new();
    for (key, m) in fam.iter() {
        let u = key.vertex.expect("verified keys carry a vertex");
        let sum = sums
            .entry(u)
            .or_insert_with(|| vec![Complex64::new(0.0, 0.0); d * d]);
        for (s, e) in sum.iter_mut().zip(m.entries()) {
            *s += e;
        }
    }
    let mut packing = ProjectorFamily::new(d)?;
    for (u, sum) in sums {
        packing.insert(u, None, HermitianMatrix::new(d, sum)?)?;
    }
    Ok(packing)
}

/// Check a projective packing: per-vertex projectors (rank read off as the
/// rounded trace) with trace-orthogonality across every edge. The verdict
/// carries the packing value, the rank sum divided by `d`.
pub fn verify_projective_packing(g: &Graph, fam: &ProjectorFamily) -> Result<CertificateVerdict> {
    let n = g.n();
    let mut per_vertex: Vec<Option<&HermitianMatrix>> = vec![None; n];
    for (key, m) in fam.iter() {
        let u = match (key.vertex, key.index) {
            (Some(u), None) => u,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "packings are keyed by vertex alone; found {key}"
                )))
            }
        };
        if u >= n {
            return Err(Error::InvalidInput(format!(
                "vertex {u} out of range for a graph on {n} vertices"
            )));
        }
        per_vertex[u] = Some(m);
    }

    let mut rank_sum = 0u64;
    for (u, m) in per_vertex.iter().enumerate() {
        if let Some(m) = m {
            let trace = m.trace();
            let rounded = trace.round();
            let residual = (trace - rounded).abs();
            if residual >= RANK_TOL || rounded < 0.0 {
                return Err(Error::numerical(
                    format!("trace of the projector at vertex {u} is not near an integer rank"),
                    residual,
                ));
            }
            rank_sum += rounded as u64;
        }
    }

    let mut violations = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(p), Some(q)) = (per_vertex[u], per_vertex[v]) {
            let residual = trace_inner_product(p, q)?.norm();
            if residual >= CERT_TOL {
                violations.push(Violation {
                    condition: "edge-orthogonality".into(),
                    first: FamilyKey::packing(u),
                    second: FamilyKey::packing(v),
                    residual,
                });
            }
        }
    }

    let value = rank_sum as f64 / fam.d() as f64;
    Ok(CertificateVerdict::from_violations(violations, Some(value)))
}

/// Orthonormal basis of a projector's range, via column-pivoted Gram-Schmidt
/// on its columns. For a (numerical) projector the column space is its range
/// and pivot norms split cleanly around 1 vs 0.
pub fn range_basis(p: &HermitianMatrix) -> Result<Vec<Vec<Complex64>>> {
    let d = p.dim();
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| (0..d).map(|i| p.entry(i, j)).collect())
        .collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    loop {
        let (best, norm) = cols
            .iter()
            .map(|c| frob_norm(c))
            .enumerate()
            .fold((0, 0.0), |acc, (j, nrm)| if nrm > acc.1 { (j, nrm) } else { acc });
        if norm < RANGE_PIVOT_TOL {
            break;
        }
        let mut v = cols.swap_remove(best);
        for x in v.iter_mut() {
            *x /= norm;
        }
        for col in cols.iter_mut() {
            let overlap: Complex64 = v.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
            for (c, b) in col.iter_mut().zip(v.iter()) {
                *c -= overlap * b;
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Verify the isotropy property behind the inertia bound for packings: the
/// composite vectors `e_u (x) psi^(u,k)`, built from a range basis of each
/// projector, must be orthonormal and must pairwise annihilate the quadratic
/// form of `W (x) I_d`. Returns false when the family fails packing
/// verification or any Gram / form residual reaches [`ISOTROPY_TOL`].
pub fn isotropy_check(g: &Graph, w: &HermitianMatrix, fam: &ProjectorFamily) -> Result<bool> {
    let n = g.n();
    let d = fam.d();
    if w.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "weight matrix is {}-dimensional but the graph has {} vertices",
            w.dim(),
            n
        )));
    }
    let weight_violations = validate_weight_matrix(g, w)?;
    if !weight_violations.is_empty() {
        return Err(Error::InvalidInput(format!(
            "weight matrix is not supported on the graph's edges ({})",
            weight_violations[0]
        )));
    }
    let verdict = verify_projective_packing(g, fam)?;
    if !verdict.valid {
        return Ok(false);
    }

    // Composite vectors in C^(n*d): block u holds a range basis vector.
    let mut composite: Vec<Vec<Complex64>> = Vec::new();
    for (key, m) in fam.iter() {
        let u = key.vertex.expect("verified keys carry a vertex");
        let basis = range_basis(m)?;
        let rank = m.trace().round() as usize;
        if basis.len() != rank {
            return Err(Error::numerical(
                format!("range basis at vertex {u} has {} vectors but trace rank is {rank}", basis.len()),
                (basis.len() as f64 - rank as f64).abs(),
            ));
        }
        for psi in basis {
            let mut vec = vec![Complex64::new(0.0, 0.0); n * d];
            vec[u * d..(u + 1) * d].copy_from_slice(&psi);
            composite.push(vec);
        }
    }

    let form = tensor_with_identity(w, d)?;
    let nd = n * d;
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let mapped: Vec<Vec<Complex64>> = composite
        .iter()
        .map(|v| {
            (0..nd)
                .map(|i| {
                    (0..nd)
                        .map(|j| form.entry(i, j) * v[j])
                        .sum()
                })
                .collect()
        })
        .collect();

    for (a, va) in composite.iter().enumerate() {
        for (b, vb) in composite.iter().enumerate().skip(a) {
            let delta = if a == b { 1.0 } else { 0.0 };
            if (dot(va, vb) - delta).norm() >= ISOTROPY_TOL {
                return Ok(false);
            }
            if dot(va, &mapped[b]).norm() >= ISOTROPY_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
