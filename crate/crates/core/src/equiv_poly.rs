//! Equivalent polynomials: the polynomial `p = cᵀ b` whose moments against
//! the element basis `b` equal those of the Heaviside or Dirac weight of a
//! cut, i.e. the solution of `M c = f` with `M` the basis Gram matrix.
//!
//! `M` only depends on the element and the degree, so it is orthogonalized
//! once (`A M Aᵀ = I` with `A` lower triangular) and `AᵀA = M⁻¹` is cached.
//! Solving for a cut is then a matrix-vector product.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use nalgebra::{DMatrix, DVector};

use crate::element::{variant_for, ElementKind, HalfSpaceCut};
use crate::tetrahedron::{tti_variant, TetCut, TetVariant};
use crate::{integrate, BoundaryMode, Error, PolyOrder, Result};

/// Largest supported degree. Orthonormality of `A` degrades like
/// `eps * cond(M)`, and `cond(M)` reaches about `1e13` for the degree-6
/// tetrahedron basis.
pub const MAX_EQUIV_DEGREE: u32 = 6;

/// Basis of the polynomials of total degree `<= degree` in an element's
/// basis convention, ordered by total degree and then by descending
/// exponent tuple (`1, x, y, x², xy, y², ...`).
#[derive(Debug, Clone, PartialEq)]
pub struct ElementBasis {
    pub kind: ElementKind,
    /// Tetrahedron basis family; `None` for other elements.
    pub variant: Option<TetVariant>,
    pub degree: u32,
    pub entries: Vec<Vec<u32>>,
}

impl ElementBasis {
    pub fn new(
        kind: ElementKind,
        degree: u32,
        variant: Option<TetVariant>,
    ) -> Result<ElementBasis> {
        if degree > MAX_EQUIV_DEGREE {
            return Err(Error::DegreeCap {
                degree,
                cap: MAX_EQUIV_DEGREE,
            });
        }
        let variant = match kind {
            ElementKind::Tetrahedron => Some(variant.unwrap_or(TetVariant::V1)),
            _ => None,
        };
        let arity = kind.arity();
        let mut entries = Vec::new();
        for total in 0..=degree {
            let mut level = Vec::new();
            compositions(total, arity, &mut Vec::new(), &mut level);
            entries.extend(level);
        }
        Ok(ElementBasis {
            kind,
            variant,
            degree,
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self, point: &[f64]) -> Vec<f64> {
        self.entries
            .iter()
            .map(|e| self.kind.basis_value(self.variant, e, point))
            .collect()
    }
}

/// Exponent tuples of the given length summing to `total`, in descending
/// lexicographic order.
fn compositions(total: u32, len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if len == 1 {
        let mut e = prefix.clone();
        e.push(total);
        out.push(e);
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, len - 1, prefix, out);
        prefix.pop();
    }
}

/// Exact full-domain moments of all pairwise basis products.
pub fn gram_matrix(basis: &ElementBasis) -> DMatrix<f64> {
    let n = basis.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let e: Vec<u32> = basis.entries[i]
                .iter()
                .zip(&basis.entries[j])
                .map(|(a, b)| a + b)
                .collect();
            let v = basis.kind.full_moment(basis.variant, &e);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    m
}

/// Gram–Schmidt with one re-orthogonalization pass in the inner product
/// `⟨u, v⟩ = uᵀ M v`. Row `k` of the result is the `k`-th orthonormal
/// vector, which only involves the first `k+1` unit vectors.
pub fn orthogonalize(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let mut v = DVector::<f64>::zeros(n);
        v[k] = 1.0;
        for _ in 0..2 {
            let mv = m * &v;
            for j in 0..k {
                let row = a.row(j).transpose();
                let proj = row.dot(&mv);
                v -= proj * row;
            }
        }
        let norm2 = v.dot(&(m * &v));
        if norm2.is_nan() || norm2 <= 0.0 {
            return Err(Error::NotPositiveDefinite { index: k });
        }
        v /= norm2.sqrt();
        for j in k + 1..n {
            v[j] = 0.0;
        }
        a.set_row(k, &v.transpose());
    }
    Ok(a)
}

/// Precomputed per-(element, degree, variant) data.
#[derive(Debug)]
pub struct EquivPolySystem {
    pub basis: ElementBasis,
    pub gram: DMatrix<f64>,
    pub a: DMatrix<f64>,
    pub ata: DMatrix<f64>,
}

impl EquivPolySystem {
    pub fn new(basis: ElementBasis) -> Result<EquivPolySystem> {
        let gram = gram_matrix(&basis);
        let a = orthogonalize(&gram)?;
        let ata = a.transpose() * &a;
        Ok(EquivPolySystem {
            basis,
            gram,
            a,
            ata,
        })
    }

    /// Shared instance from a process-wide cache.
    pub fn cached(
        kind: ElementKind,
        degree: u32,
        variant: Option<TetVariant>,
    ) -> Result<Arc<EquivPolySystem>> {
        type Key = (ElementKind, u32, Option<TetVariant>);
        static CACHE: LazyLock<Mutex<HashMap<Key, Arc<EquivPolySystem>>>> =
            LazyLock::new(Default::default);
        let basis = ElementBasis::new(kind, degree, variant)?;
        let key = (kind, degree, basis.variant);
        if let Some(sys) = CACHE.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(Arc::clone(sys));
        }
        let sys = Arc::new(EquivPolySystem::new(basis)?);
        let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(cache.entry(key).or_insert(sys)))
    }

    /// Coefficients for a moment vector: `AᵀA f`.
    pub fn solve(&self, moments: &[f64]) -> Vec<f64> {
        let f = DVector::from_column_slice(moments);
        (&self.ata * f).iter().copied().collect()
    }

    /// `‖M c - f‖∞`.
    pub fn residual(&self, coefficients: &[f64], moments: &[f64]) -> f64 {
        let c = DVector::from_column_slice(coefficients);
        let f = DVector::from_column_slice(moments);
        (&self.gram * c - f).amax()
    }

    /// `max |A M Aᵀ - I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.gram.nrows();
        (&self.a * &self.gram * self.a.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// 2-norm condition number of `M`.
    pub fn gram_condition(&self) -> f64 {
        condition(&self.gram)
    }

    /// 2-norm condition number of `A M Aᵀ`.
    pub fn orthogonalized_condition(&self) -> f64 {
        condition(&(&self.a * &self.gram * self.a.transpose()))
    }
}

fn condition(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    sv.max() / sv.min()
}

/// Moments of every basis element against the weight of the cut.
pub fn moment_vector(
    basis: &ElementBasis,
    cut: &HalfSpaceCut,
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<Vec<f64>> {
    if basis.kind == ElementKind::Tetrahedron {
        if cut.normal.len() != 3 {
            return Err(Error::Arity {
                field: "normal",
                expected: 3,
                got: cut.normal.len(),
            });
        }
        let c = TetCut::new(cut.normal[0], cut.normal[1], cut.normal[2], cut.d)?;
        let variant = basis.variant.unwrap_or(TetVariant::V1);
        return basis
            .entries
            .iter()
            .map(|e| tti_variant(&c, variant, [e[0], e[1], e[2]], s, mode))
            .collect();
    }
    basis
        .entries
        .iter()
        .map(|e| integrate(basis.kind, cut, e, s, mode).map(|r| r.value))
        .collect()
}

/// Equivalent polynomial of a cut.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivPoly {
    pub basis: ElementBasis,
    pub moments: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub residual: f64,
}

impl EquivPoly {
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        evaluate(&self.basis, &self.coefficients, point)
    }
}

/// Solves for the equivalent polynomial; tetrahedra use the basis family
/// the kernel picks for the cut.
pub fn equivalent_polynomial(
    kind: ElementKind,
    degree: u32,
    cut: &HalfSpaceCut,
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<EquivPoly> {
    let sys = EquivPolySystem::cached(kind, degree, variant_for(kind, cut))?;
    let moments = moment_vector(&sys.basis, cut, s, mode)?;
    let coefficients = sys.solve(&moments);
    let residual = sys.residual(&coefficients, &moments);
    Ok(EquivPoly {
        basis: sys.basis.clone(),
        moments,
        coefficients,
        residual,
    })
}

/// `Σ c_i b_i(point)`.
pub fn evaluate(basis: &ElementBasis, coefficients: &[f64], point: &[f64]) -> f64 {
    basis
        .values(point)
        .iter()
        .zip(coefficients)
        .map(|(b, c)| b * c)
        .sum()
}
