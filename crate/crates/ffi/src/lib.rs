//! C ABI for the cutquad kernels.
//!
//! Every entry point returns a [`CqStatus`] and writes results through out
//! pointers. Panics never cross the boundary; they surface as
//! [`CqStatus::Panic`].

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::sync::Arc;

use cutquad::element::{ElementKind, HalfSpaceCut};
use cutquad::equiv_poly::{moment_vector, EquivPolySystem};
use cutquad::line_segment::{lsi, SegmentCut};
use cutquad::{hypercube, prism, tetrahedron, triangle};
use cutquad::{BoundaryMode, Error, PolyOrder, TetVariant};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegreeCap = 3,
    Numerical = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqElement {
    Segment = 0,
    Hypercube = 1,
    Triangle = 2,
    Tetrahedron = 3,
    Prism = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqBoundaryMode {
    Half = 0,
    Full = 1,
}

/// Tetrahedron basis family; `Auto` lets the kernel choose.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CqTetVariant {
    Auto = 0,
    V1 = 1,
    V2 = 2,
    V3 = 3,
}

/// Precomputed equivalent-polynomial system for one element and degree.
pub struct CqEquivSystem {
    inner: Arc<EquivPolySystem>,
}

type Outcome = Result<(), CqStatus>;

fn status_of(err: &Error) -> CqStatus {
    match err {
        Error::DegreeCap { .. } => CqStatus::DegreeCap,
        Error::NotPositiveDefinite { .. } => CqStatus::Numerical,
        _ => CqStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Outcome) -> CqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CqStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => CqStatus::Panic,
    }
}

fn lift<T>(r: cutquad::Result<T>) -> Result<T, CqStatus> {
    r.map_err(|e| status_of(&e))
}

/// # Safety
/// `ptr` must be null or valid for `len` reads.
unsafe fn input<'a, T>(ptr: *const T, len: usize) -> Result<&'a [T], CqStatus> {
    if len == 0 {
        Ok(&[])
    } else if ptr.is_null() {
        Err(CqStatus::NullPointer)
    } else {
        Ok(slice::from_raw_parts(ptr, len))
    }
}

/// # Safety
/// `out` must be null or valid for one write.
unsafe fn write<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(CqStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn order(s: i32) -> Result<PolyOrder, CqStatus> {
    lift(PolyOrder::new(s))
}

fn mode(m: CqBoundaryMode) -> BoundaryMode {
    match m {
        CqBoundaryMode::Half => BoundaryMode::Half,
        CqBoundaryMode::Full => BoundaryMode::Full,
    }
}

fn element(kind: CqElement, dim: usize) -> Result<ElementKind, CqStatus> {
    match kind {
        CqElement::Segment => Ok(ElementKind::Segment),
        CqElement::Hypercube => lift(ElementKind::new_hypercube(dim)),
        CqElement::Triangle => Ok(ElementKind::Triangle),
        CqElement::Tetrahedron => Ok(ElementKind::Tetrahedron),
        CqElement::Prism => Ok(ElementKind::Prism),
    }
}

fn variant_code(v: TetVariant) -> CqTetVariant {
    match v {
        TetVariant::V1 => CqTetVariant::V1,
        TetVariant::V2 => CqTetVariant::V2,
        TetVariant::V3 => CqTetVariant::V3,
    }
}

/// Static description of a status code; never null.
#[no_mangle]
pub extern "C" fn cq_status_message(status: CqStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        CqStatus::Ok => b"ok\0",
        CqStatus::NullPointer => b"null pointer argument\0",
        CqStatus::InvalidArgument => b"invalid argument\0",
        CqStatus::DegreeCap => b"degree above the supported cap\0",
        CqStatus::Numerical => b"numerical breakdown\0",
        CqStatus::BufferTooSmall => b"output buffer too small\0",
        CqStatus::Panic => b"internal error\0",
    };
    text.as_ptr().cast()
}

/// Segment `[0, 1]`, weight `x^m`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_lsi(
    a: f64,
    d: f64,
    m: u32,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
) -> CqStatus {
    guard(|| {
        let cut = lift(SegmentCut::new(a, d))?;
        let v = lift(lsi(cut, m, order(s)?, mode(boundary)))?;
        write(out, v)
    })
}

/// Unit hypercube of dimension `dim`; `normal` and `powers` hold `dim`
/// entries each.
///
/// # Safety
/// `normal` and `powers` must be valid for `dim` reads, `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_hci(
    normal: *const f64,
    dim: usize,
    d: f64,
    powers: *const u32,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
) -> CqStatus {
    guard(|| {
        let cut = lift(hypercube::HypercubeCut::new(
            input(normal, dim)?.to_vec(),
            d,
        ))?;
        let v = lift(hypercube::hci(
            &cut,
            input(powers, dim)?,
            order(s)?,
            mode(boundary),
        ))?;
        write(out, v)
    })
}

/// Reference triangle, weight `(1-x)^m y^n`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_tri(
    a: f64,
    b: f64,
    d: f64,
    m: u32,
    n: u32,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
) -> CqStatus {
    guard(|| {
        let cut = lift(triangle::TriangleCut::new(a, b, d))?;
        let v = lift(triangle::tri(&cut, m, n, order(s)?, mode(boundary)))?;
        write(out, v)
    })
}

/// Reference tetrahedron in the basis family chosen for the cut, which is
/// reported through `variant_out` when it is not null.
///
/// # Safety
/// `out` must be valid for one write; `variant_out` null or valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn cq_tti(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    m: u32,
    n: u32,
    o: u32,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
    variant_out: *mut CqTetVariant,
) -> CqStatus {
    guard(|| {
        let cut = lift(tetrahedron::TetCut::new(a, b, c, d))?;
        let (v, variant) = lift(tetrahedron::tti(&cut, [m, n, o], order(s)?, mode(boundary)))?;
        write(out, v)?;
        if !variant_out.is_null() {
            variant_out.write(variant_code(variant));
        }
        Ok(())
    })
}

/// Reference prism, weight `(1-x)^m y^n ((1+z)/2)^o` against `dV/2`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn cq_pri(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    m: u32,
    n: u32,
    o: u32,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
) -> CqStatus {
    guard(|| {
        let cut = lift(prism::PrismCut::new(a, b, c, d))?;
        let v = lift(prism::pri(&cut, [m, n, o], order(s)?, mode(boundary)))?;
        write(out, v)
    })
}

/// Generic entry point. `dim` is only read for `CQ_ELEMENT_HYPERCUBE`.
///
/// # Safety
/// `normal` and `powers` must be valid for their lengths, `out` for one
/// write.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn cq_integrate(
    kind: CqElement,
    dim: usize,
    normal: *const f64,
    normal_len: usize,
    d: f64,
    powers: *const u32,
    powers_len: usize,
    s: i32,
    boundary: CqBoundaryMode,
    out: *mut f64,
) -> CqStatus {
    guard(|| {
        let kind = element(kind, dim)?;
        let cut = HalfSpaceCut::new(input(normal, normal_len)?.to_vec(), d);
        let r = lift(cutquad::integrate(
            kind,
            &cut,
            input(powers, powers_len)?,
            order(s)?,
            mode(boundary),
        ))?;
        write(out, r.value)
    })
}

/// Builds (or fetches from the shared cache) the system for polynomials of
/// total degree `<= degree`. Release with [`cq_equiv_system_free`].
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn cq_equiv_system_new(
    kind: CqElement,
    dim: usize,
    degree: u32,
    variant: CqTetVariant,
    out: *mut *mut CqEquivSystem,
) -> CqStatus {
    guard(|| {
        if out.is_null() {
            return Err(CqStatus::NullPointer);
        }
        let kind = element(kind, dim)?;
        let variant = match variant {
            CqTetVariant::Auto => None,
            CqTetVariant::V1 => Some(TetVariant::V1),
            CqTetVariant::V2 => Some(TetVariant::V2),
            CqTetVariant::V3 => Some(TetVariant::V3),
        };
        let inner = lift(EquivPolySystem::cached(kind, degree, variant))?;
        out.write(Box::into_raw(Box::new(CqEquivSystem { inner })));
        Ok(())
    })
}

/// Number of basis polynomials and exponents per basis entry.
///
/// # Safety
/// `sys` must come from [`cq_equiv_system_new`]; out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn cq_equiv_system_len(
    sys: *const CqEquivSystem,
    len_out: *mut usize,
    arity_out: *mut usize,
) -> CqStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or(CqStatus::NullPointer)?;
        write(len_out, sys.inner.basis.len())?;
        write(arity_out, sys.inner.basis.kind.arity())
    })
}

/// Writes the basis exponents row by row (`len * arity` values).
///
/// # Safety
/// `sys` must come from [`cq_equiv_system_new`]; `powers_out` valid for
/// `capacity` writes.
#[no_mangle]
pub unsafe extern "C" fn cq_equiv_system_basis(
    sys: *const CqEquivSystem,
    powers_out: *mut u32,
    capacity: usize,
) -> CqStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or(CqStatus::NullPointer)?;
        let flat: Vec<u32> = sys.inner.basis.entries.iter().flatten().copied().collect();
        if capacity < flat.len() {
            return Err(CqStatus::BufferTooSmall);
        }
        if powers_out.is_null() {
            return Err(CqStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(flat.as_ptr(), powers_out, flat.len());
        Ok(())
    })
}

/// Coefficients of the equivalent polynomial for a cut, in basis order,
/// plus the residual `max |M c - f|` when `residual_out` is not null.
///
/// # Safety
/// `sys` must come from [`cq_equiv_system_new`]; `normal` valid for
/// `normal_len` reads; `coefficients_out` valid for `capacity` writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn cq_equiv_system_solve(
    sys: *const CqEquivSystem,
    normal: *const f64,
    normal_len: usize,
    d: f64,
    s: i32,
    boundary: CqBoundaryMode,
    coefficients_out: *mut f64,
    capacity: usize,
    residual_out: *mut f64,
) -> CqStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or(CqStatus::NullPointer)?;
        let basis = &sys.inner.basis;
        if capacity < basis.len() {
            return Err(CqStatus::BufferTooSmall);
        }
        if coefficients_out.is_null() {
            return Err(CqStatus::NullPointer);
        }
        let cut = HalfSpaceCut::new(input(normal, normal_len)?.to_vec(), d);
        let moments = lift(moment_vector(basis, &cut, order(s)?, mode(boundary)))?;
        let coefficients = sys.inner.solve(&moments);
        ptr::copy_nonoverlapping(coefficients.as_ptr(), coefficients_out, coefficients.len());
        if !residual_out.is_null() {
            residual_out.write(sys.inner.residual(&coefficients, &moments));
        }
        Ok(())
    })
}

/// Releases a system; null is ignored.
///
/// # Safety
/// `sys` must be null or come from [`cq_equiv_system_new`], and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cq_equiv_system_free(sys: *mut CqEquivSystem) {
    if !sys.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(sys))));
    }
}
