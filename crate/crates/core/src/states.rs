//! Complex state vectors and the small dense linear algebra they need:
//! inner products, tensor products, Gram matrices, and completion of a
//! partially specified inner-product-preserving map to a full unitary.
//!
//! States are plain amplitude vectors over ℂ. All overlaps handled by the
//! rest of the crate are real and nonnegative, so [`make_state_pair`]
//! produces real vectors; nothing here assumes that, though.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Conjugate-symmetry tolerance for Hermitian matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Operator-norm tolerance on `U†U − I` for unitary matrices.
pub const UNITARY_TOL: f64 = 1e-10;
/// Maximum allowed entrywise deviation between prescribed input and output Grams.
pub const GRAM_MATCH_TOL: f64 = 1e-9;
/// Smallest singular value below which prescribed inputs count as dependent.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

/// Residual norm below which a completion candidate is already in the span.
const COMPLETION_KEEP_TOL: f64 = 1e-8;

/// A normalized pure state: a unit vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wraps an amplitude vector, requiring unit norm within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::from_vector(DVector::from_vec(amplitudes))
    }

    pub fn from_vector(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput("state amplitudes"));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Wraps an amplitude vector after rescaling it to unit norm.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyInput("state amplitudes"));
        }
        let norm = amplitudes.norm();
        if norm < 1e-300 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// The computational basis state |index⟩ in `dim` dimensions.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyInput("state amplitudes"));
        }
        if index >= dim {
            return Err(Error::OutOfRange {
                name: "basis index",
                value: index as f64,
                expected: "an index smaller than the dimension",
            });
        }
        let mut v = DVector::from_element(dim, Complex64::ZERO);
        v[index] = Complex64::ONE;
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub(crate) fn vector(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Embeds the state into a larger space by appending zero amplitudes.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: dim,
            });
        }
        let mut v = DVector::from_element(dim, Complex64::ZERO);
        v.rows_mut(0, self.dim()).copy_from(&self.amplitudes);
        Ok(Self { amplitudes: v })
    }

    /// The k-fold tensor power of the state (k ≥ 1).
    pub fn tensor_power(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                name: "tensor power",
                value: 0.0,
                expected: "an integer ≥ 1",
            });
        }
        let mut out = self.clone();
        for _ in 1..k {
            out = tensor(&out, self);
        }
        Ok(out)
    }
}

/// A square matrix equal to its own conjugate transpose within [`HERMITIAN_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
}

impl HermitianMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.is_empty() {
            return Err(Error::EmptyInput("matrix entries"));
        }
        let deviation = (&entries - entries.adjoint()).camax();
        if deviation > 2.0 * HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { entries })
    }

    /// Builds a Hermitian matrix from real entries given in row-major order.
    pub fn from_real_rows(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: rows.len(),
                right: n * n,
            });
        }
        let entries = DMatrix::from_row_slice(
            n,
            n,
            &rows.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
        );
        Self::new(entries)
    }

    /// The n×n all-ones matrix; the Gram matrix of n identical probe states.
    pub fn all_ones(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("matrix entries"));
        }
        Ok(Self {
            entries: DMatrix::from_element(n, n, Complex64::ONE),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Smallest eigenvalue of the matrix (Hermitian-symmetrized before solving).
    pub fn min_eigenvalue(&self) -> f64 {
        let sym = (&self.entries + self.entries.adjoint()).unscale(2.0);
        sym.symmetric_eigen().eigenvalues.min()
    }

    /// True when the smallest eigenvalue is ≥ `-tol`.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

/// A square matrix with `‖U†U − I‖₂ ≤` [`UNITARY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<Complex64>,
}

impl UnitaryMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                left: entries.nrows(),
                right: entries.ncols(),
            });
        }
        if entries.is_empty() {
            return Err(Error::EmptyInput("matrix entries"));
        }
        let residual = unitarity_residual(&entries);
        if residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Applies the unitary to a state, rescaling away the ≤1e-10 norm drift.
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: state.dim(),
                right: self.dim(),
            });
        }
        PureState::normalized(&self.entries * state.vector())
    }

    pub(crate) fn apply_raw(&self, state: &PureState) -> DVector<Complex64> {
        &self.entries * state.vector()
    }
}

/// Operator norm of `U†U − I`.
pub fn unitarity_residual(entries: &DMatrix<Complex64>) -> f64 {
    let n = entries.ncols();
    let residual = entries.adjoint() * entries - DMatrix::<Complex64>::identity(n, n);
    residual.singular_values().max()
}

/// Returns two normalized states in `dim` dimensions with real inner product
/// `overlap`, embedded in the first two coordinates.
pub fn make_state_pair(overlap: f64, dim: usize) -> Result<(PureState, PureState)> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::OutOfRange {
            name: "overlap",
            value: overlap,
            expected: "a real number in [0, 1]",
        });
    }
    if dim < 2 {
        return Err(Error::OutOfRange {
            name: "dim",
            value: dim as f64,
            expected: "an integer ≥ 2",
        });
    }
    let a = PureState::basis(dim, 0)?;
    let mut b = DVector::from_element(dim, Complex64::ZERO);
    b[0] = Complex64::new(overlap, 0.0);
    b[1] = Complex64::new((1.0 - overlap * overlap).max(0.0).sqrt(), 0.0);
    Ok((a, PureState::from_vector(b)?))
}

/// The sesquilinear inner product ⟨a|b⟩, conjugate-linear in `a`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.vector().dotc(b.vector()))
}

/// The Kronecker product a ⊗ b.
pub fn tensor(a: &PureState, b: &PureState) -> PureState {
    let v = a.vector().kronecker(b.vector());
    PureState {
        amplitudes: DVector::from_column_slice(v.as_slice()),
    }
}

/// Gram matrix `G[i][j] = ⟨states[i]|states[j]⟩`; Hermitian by construction.
pub fn gram_matrix(states: &[PureState]) -> Result<HermitianMatrix> {
    if states.is_empty() {
        return Err(Error::EmptyInput("state list"));
    }
    let n = states.len();
    let dim = states[0].dim();
    for s in states {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: s.dim(),
            });
        }
    }
    let mut g = DMatrix::from_element(n, n, Complex64::ZERO);
    for i in 0..n {
        for j in i..n {
            let ip = states[i].vector().dotc(states[j].vector());
            g[(i, j)] = ip;
            g[(j, i)] = ip.conj();
        }
    }
    HermitianMatrix::new(g)
}

/// Extends the prescribed map `inputs[j] ↦ outputs[j]` to a full unitary.
///
/// Both lists must have the same length and live in the same dimension; the
/// inputs must be linearly independent and the two Gram matrices must agree
/// entrywise within [`GRAM_MATCH_TOL`] (a map between them preserves inner
/// products exactly when the Grams match). The orthonormal complement on both
/// sides is filled in from the standard basis in coordinate order, so repeat
/// calls return bitwise-identical matrices.
pub fn complete_to_unitary(inputs: &[PureState], outputs: &[PureState]) -> Result<UnitaryMatrix> {
    if inputs.is_empty() {
        return Err(Error::EmptyInput("prescribed inputs"));
    }
    if inputs.len() != outputs.len() {
        return Err(Error::DimensionMismatch {
            left: inputs.len(),
            right: outputs.len(),
        });
    }
    let dim = inputs[0].dim();
    for s in inputs.iter().chain(outputs.iter()) {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: s.dim(),
            });
        }
    }
    if inputs.len() > dim {
        return Err(Error::DimensionMismatch {
            left: inputs.len(),
            right: dim,
        });
    }

    let g_in = gram_matrix(inputs)?;
    let g_out = gram_matrix(outputs)?;
    let deviation = (g_in.entries() - g_out.entries()).camax();
    if deviation > GRAM_MATCH_TOL {
        return Err(Error::GramMismatch { deviation });
    }

    let input_matrix = columns_to_matrix(inputs);
    let smallest = input_matrix.singular_values().min();
    if smallest < INDEPENDENCE_TOL {
        return Err(Error::DegenerateInputs {
            smallest_singular_value: smallest,
        });
    }

    let u_basis = orthonormal_basis_with_completion(inputs, dim)?;
    let v_basis = orthonormal_basis_with_completion(outputs, dim)?;

    // U = Σ_j |v_j⟩⟨u_j|
    let u_mat = basis_to_matrix(&u_basis);
    let v_mat = basis_to_matrix(&v_basis);
    UnitaryMatrix::new(v_mat * u_mat.adjoint())
}

fn columns_to_matrix(states: &[PureState]) -> DMatrix<Complex64> {
    let dim = states[0].dim();
    DMatrix::from_fn(dim, states.len(), |i, j| states[j].vector()[i])
}

fn basis_to_matrix(basis: &[DVector<Complex64>]) -> DMatrix<Complex64> {
    let dim = basis[0].len();
    DMatrix::from_fn(dim, basis.len(), |i, j| basis[j][i])
}

/// Modified Gram-Schmidt with a re-orthogonalization pass. Returns `None`
/// when the residual norm after projection is at most `keep_tol`.
fn mgs_residual(
    basis: &[DVector<Complex64>],
    v: &DVector<Complex64>,
    keep_tol: f64,
) -> Option<DVector<Complex64>> {
    let mut w = v.clone();
    for _ in 0..2 {
        for b in basis {
            let coeff = b.dotc(&w);
            w -= b * coeff;
        }
    }
    let norm = w.norm();
    if norm <= keep_tol {
        None
    } else {
        Some(w.unscale(norm))
    }
}

/// Orthonormalizes `prescribed` in order, then completes to a full basis of
/// the `dim`-dimensional space from the standard basis in coordinate order.
fn orthonormal_basis_with_completion(
    prescribed: &[PureState],
    dim: usize,
) -> Result<Vec<DVector<Complex64>>> {
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
    for s in prescribed {
        match mgs_residual(&basis, s.vector(), 1e-13) {
            Some(b) => basis.push(b),
            None => {
                return Err(Error::DegenerateInputs {
                    smallest_singular_value: 0.0,
                })
            }
        }
    }
    for k in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = DVector::from_element(dim, Complex64::ZERO);
        e[k] = Complex64::ONE;
        if let Some(b) = mgs_residual(&basis, &e, COMPLETION_KEEP_TOL) {
            basis.push(b);
        }
    }
    if basis.len() != dim {
        return Err(Error::Internal(format!(
            "basis completion produced {} of {} directions",
            basis.len(),
            dim
        )));
    }
    Ok(basis)
}

/// Componentwise absolute maximum of a complex matrix.
trait CAMax {
    fn camax(&self) -> f64;
}

impl CAMax for DMatrix<Complex64> {
    fn camax(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn state_pair_identity_case() {
        let (a, b) = make_state_pair(1.0, 2).unwrap();
        assert!((inner_product(&a, &b).unwrap().re - 1.0).abs() < TOL);
    }

    #[test]
    fn state_pair_orthogonal_case() {
        let (a, b) = make_state_pair(0.0, 2).unwrap();
        assert!(inner_product(&a, &b).unwrap().norm() < TOL);
    }

    #[test]
    fn state_pair_generic_overlap() {
        let (a, b) = make_state_pair(0.72, 2).unwrap();
        assert_eq!(a.amplitudes(), &[c(1.0), c(0.0)]);
        assert!((b.amplitudes()[0].re - 0.72).abs() < TOL);
        assert!((b.amplitudes()[1].re - (1.0 - 0.72 * 0.72).sqrt()).abs() < TOL);
        assert!((inner_product(&a, &b).unwrap().re - 0.72).abs() < TOL);
    }

    #[test]
    fn state_pair_rejects_bad_arguments() {
        assert!(make_state_pair(1.2, 2).is_err());
        assert!(make_state_pair(-0.1, 2).is_err());
        assert!(make_state_pair(f64::NAN, 2).is_err());
        assert!(make_state_pair(0.5, 1).is_err());
    }

    #[test]
    fn inner_product_basis_states() {
        let e1 = PureState::basis(2, 0).unwrap();
        let e2 = PureState::basis(2, 1).unwrap();
        assert!((inner_product(&e1, &e1).unwrap().re - 1.0).abs() < TOL);
        assert!(inner_product(&e1, &e2).unwrap().norm() < TOL);
    }

    #[test]
    fn inner_product_pair_by_construction() {
        let (a, b) = make_state_pair(0.6, 2).unwrap();
        assert!((inner_product(&a, &b).unwrap().re - 0.6).abs() < TOL);
    }

    #[test]
    fn inner_product_conjugate_symmetry() {
        let a = PureState::new(vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ])
        .unwrap();
        let b = PureState::new(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < TOL);
    }

    #[test]
    fn inner_product_rejects_dimension_mismatch() {
        let a = PureState::basis(2, 0).unwrap();
        let b = PureState::basis(3, 0).unwrap();
        assert!(matches!(
            inner_product(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn tensor_preserves_norm_and_multiplies_overlaps() {
        let (a, b) = make_state_pair(0.6, 2).unwrap();
        let (cc, d) = make_state_pair(0.9, 3).unwrap();
        let ac = tensor(&a, &cc);
        let bd = tensor(&b, &d);
        assert_eq!(ac.dim(), 6);
        assert!((ac.vector().norm() - 1.0).abs() < TOL);
        let ip = inner_product(&ac, &bd).unwrap();
        assert!((ip.re - 0.54).abs() < TOL);
        assert!(ip.im.abs() < TOL);
    }

    #[test]
    fn tensor_power_raises_overlap() {
        let (a, b) = make_state_pair(0.6, 2).unwrap();
        let a2 = a.tensor_power(2).unwrap();
        let b2 = b.tensor_power(2).unwrap();
        assert!((inner_product(&a2, &b2).unwrap().re - 0.36).abs() < TOL);
    }

    #[test]
    fn gram_of_basis_states_is_identity() {
        let states = [PureState::basis(2, 0).unwrap(), PureState::basis(2, 1).unwrap()];
        let g = gram_matrix(&states).unwrap();
        assert!((g.entries() - DMatrix::<Complex64>::identity(2, 2)).camax() < TOL);
    }

    #[test]
    fn gram_of_overlapping_pair() {
        let (a, b) = make_state_pair(0.6, 2).unwrap();
        let g = gram_matrix(&[a, b]).unwrap();
        let expected = HermitianMatrix::from_real_rows(2, &[1.0, 0.6, 0.6, 1.0]).unwrap();
        assert!((g.entries() - expected.entries()).camax() < TOL);
    }

    #[test]
    fn gram_rejects_mixed_dimensions() {
        let a = PureState::basis(2, 0).unwrap();
        let b = PureState::basis(3, 0).unwrap();
        assert!(matches!(
            gram_matrix(&[a, b]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn completion_maps_basis_state_to_basis_state() {
        let e1 = PureState::basis(2, 0).unwrap();
        let e2 = PureState::basis(2, 1).unwrap();
        let u = complete_to_unitary(&[e1.clone()], &[e2.clone()]).unwrap();
        let image = u.apply(&e1).unwrap();
        assert!((inner_product(&image, &e2).unwrap().norm() - 1.0).abs() < 1e-10);
        assert!(unitarity_residual(u.entries()) < UNITARY_TOL);
    }

    #[test]
    fn completion_of_identical_lists_acts_as_identity_on_span() {
        let (a, b) = make_state_pair(0.3, 4).unwrap();
        let u = complete_to_unitary(&[a.clone(), b.clone()], &[a.clone(), b.clone()]).unwrap();
        for s in [&a, &b] {
            let image = u.apply_raw(s);
            assert!((image - s.vector()).norm() < 1e-9);
        }
    }

    #[test]
    fn completion_realizes_prescribed_pairs_in_dim_8() {
        let (i1, i2) = make_state_pair(0.432, 8).unwrap();
        // Outputs with the same Gram but living in other coordinates.
        let o1 = PureState::basis(8, 5).unwrap();
        let mut v = DVector::from_element(8, Complex64::ZERO);
        v[5] = c(0.432);
        v[6] = c((1.0f64 - 0.432 * 0.432).sqrt());
        let o2 = PureState::from_vector(v).unwrap();
        let u = complete_to_unitary(&[i1.clone(), i2.clone()], &[o1.clone(), o2.clone()]).unwrap();
        assert!((u.apply_raw(&i1) - o1.vector()).norm() < 1e-9);
        assert!((u.apply_raw(&i2) - o2.vector()).norm() < 1e-9);
    }

    #[test]
    fn completion_rejects_gram_mismatch() {
        let (i1, i2) = make_state_pair(0.3, 4).unwrap();
        let (o1, o2) = make_state_pair(0.7, 4).unwrap();
        assert!(matches!(
            complete_to_unitary(&[i1, i2], &[o1, o2]),
            Err(Error::GramMismatch { .. })
        ));
    }

    #[test]
    fn completion_rejects_dependent_inputs() {
        let a = PureState::basis(3, 0).unwrap();
        assert!(matches!(
            complete_to_unitary(&[a.clone(), a.clone()], &[a.clone(), a.clone()]),
            Err(Error::DegenerateInputs { .. })
        ));
    }

    #[test]
    fn completion_is_bitwise_deterministic() {
        let (i1, i2) = make_state_pair(0.55, 6).unwrap();
        let (o1, o2) = make_state_pair(0.55, 6).unwrap();
        let u1 = complete_to_unitary(&[i1.clone(), i2.clone()], &[o1.clone(), o2.clone()]).unwrap();
        let u2 = complete_to_unitary(&[i1, i2], &[o1, o2]).unwrap();
        assert_eq!(u1.entries(), u2.entries());
    }

    #[test]
    fn pure_state_rejects_unnormalized_amplitudes() {
        assert!(matches!(
            PureState::new(vec![c(0.5), c(0.5)]),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn hermitian_rejects_asymmetric_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.3), c(0.2), c(1.0)]);
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn unitary_rejects_non_unitary_matrix() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.5)]);
        assert!(matches!(
            UnitaryMatrix::new(m),
            Err(Error::NotUnitary { .. })
        ));
    }
}
