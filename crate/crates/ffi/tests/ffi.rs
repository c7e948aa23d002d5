use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use cutquad_ffi::*;

const HALF: CqBoundaryMode = CqBoundaryMode::Half;

#[test]
fn scalar_entry_points() {
    let mut v = f64::NAN;
    unsafe {
        assert_eq!(cq_lsi(1.0, 0.0, 0, -1, HALF, &mut v), CqStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(
            cq_lsi(1.0, 0.0, 0, -1, CqBoundaryMode::Full, &mut v),
            CqStatus::Ok
        );
        assert_eq!(v, 1.0);

        let normal = [0.0, 0.0, 1.0];
        let powers = [0u32, 0, 0];
        assert_eq!(
            cq_hci(normal.as_ptr(), 3, -0.5, powers.as_ptr(), 0, HALF, &mut v),
            CqStatus::Ok
        );
        assert_eq!(v, 0.5);

        assert_eq!(cq_tri(1.0, 0.0, -0.5, 0, 0, -1, HALF, &mut v), CqStatus::Ok);
        assert!((v - 0.5).abs() < 1e-15);

        let mut variant = CqTetVariant::Auto;
        assert_eq!(
            cq_tti(0.0, 0.0, 1.0, 1.0, 0, 0, 0, 0, HALF, &mut v, &mut variant),
            CqStatus::Ok
        );
        assert!((v - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(variant, CqTetVariant::V1);

        assert_eq!(
            cq_pri(0.0, 0.0, 1.0, 0.0, 0, 0, 1, 0, HALF, &mut v),
            CqStatus::Ok
        );
        assert!((v - 0.1875).abs() < 1e-15);
    }
}

#[test]
fn generic_entry_point_matches_library() {
    let normal = [0.3, -0.7, 0.5];
    let powers = [1u32, 2, 0];
    for (kind, dim, element) in [
        (CqElement::Hypercube, 3, cutquad::ElementKind::CUBE),
        (CqElement::Tetrahedron, 0, cutquad::ElementKind::Tetrahedron),
        (CqElement::Prism, 0, cutquad::ElementKind::Prism),
    ] {
        let mut v = f64::NAN;
        let status = unsafe {
            cq_integrate(
                kind,
                dim,
                normal.as_ptr(),
                3,
                0.2,
                powers.as_ptr(),
                3,
                0,
                HALF,
                &mut v,
            )
        };
        assert_eq!(status, CqStatus::Ok);
        let cut = cutquad::HalfSpaceCut::new(normal.to_vec(), 0.2);
        let want = cutquad::integrate(
            element,
            &cut,
            &powers,
            cutquad::PolyOrder::SUBDOMAIN,
            cutquad::BoundaryMode::Half,
        )
        .unwrap()
        .value;
        assert_eq!(v, want);
    }
}

#[test]
fn errors_are_status_codes() {
    let mut v = 0.0;
    unsafe {
        assert_eq!(
            cq_lsi(0.0, 0.5, 0, 0, HALF, &mut v),
            CqStatus::InvalidArgument
        );
        assert_eq!(
            cq_lsi(1.0, 0.5, 0, -2, HALF, &mut v),
            CqStatus::InvalidArgument
        );
        assert_eq!(
            cq_lsi(1.0, 0.5, 0, 0, HALF, ptr::null_mut()),
            CqStatus::NullPointer
        );
        assert_eq!(
            cq_hci(ptr::null(), 2, 0.0, [0u32, 0].as_ptr(), 0, HALF, &mut v),
            CqStatus::NullPointer
        );
        assert_eq!(cq_lsi(1.0, 0.5, 40, 0, HALF, &mut v), CqStatus::DegreeCap);
        let normal = [1.0, 0.0];
        assert_eq!(
            cq_integrate(
                CqElement::Triangle,
                0,
                normal.as_ptr(),
                2,
                0.0,
                [0u32].as_ptr(),
                1,
                0,
                HALF,
                &mut v
            ),
            CqStatus::InvalidArgument
        );
    }
    for status in [CqStatus::Ok, CqStatus::Panic, CqStatus::BufferTooSmall] {
        let text = unsafe { CStr::from_ptr(cq_status_message(status)) };
        assert!(!text.to_bytes().is_empty());
    }
}

#[test]
fn equiv_system_handle_lifecycle() {
    unsafe {
        let mut sys: *mut CqEquivSystem = ptr::null_mut();
        assert_eq!(
            cq_equiv_system_new(CqElement::Hypercube, 2, 1, CqTetVariant::Auto, &mut sys),
            CqStatus::Ok
        );
        assert!(!sys.is_null());
        let (mut len, mut arity) = (0usize, 0usize);
        assert_eq!(cq_equiv_system_len(sys, &mut len, &mut arity), CqStatus::Ok);
        assert_eq!((len, arity), (3, 2));
        let mut powers = [99u32; 6];
        assert_eq!(
            cq_equiv_system_basis(sys, powers.as_mut_ptr(), 6),
            CqStatus::Ok
        );
        assert_eq!(powers, [0, 0, 1, 0, 0, 1]);
        assert_eq!(
            cq_equiv_system_basis(sys, powers.as_mut_ptr(), 5),
            CqStatus::BufferTooSmall
        );

        // the subdomain x > 1/2 of the unit square
        let normal = [1.0, 0.0];
        let mut coefficients = [0.0; 3];
        let mut residual = f64::NAN;
        let status = cq_equiv_system_solve(
            sys,
            normal.as_ptr(),
            2,
            -0.5,
            0,
            HALF,
            coefficients.as_mut_ptr(),
            3,
            &mut residual,
        );
        assert_eq!(status, CqStatus::Ok);
        assert!(residual < 1e-14);
        // least-squares linear fit of the step: -1/4 + 3/2 x
        assert!((coefficients[0] + 0.25).abs() < 1e-13, "{coefficients:?}");
        assert!((coefficients[1] - 1.5).abs() < 1e-13);
        assert!(coefficients[2].abs() < 1e-13);
        cq_equiv_system_free(sys);
        cq_equiv_system_free(ptr::null_mut());

        assert_eq!(
            cq_equiv_system_new(CqElement::Triangle, 0, 9, CqTetVariant::Auto, &mut sys),
            CqStatus::DegreeCap
        );
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cutquad.h");
    let text = std::fs::read_to_string(&header).expect("build script writes the header");
    for symbol in [
        "cq_integrate",
        "cq_equiv_system_new",
        "cq_equiv_system_free",
        "typedef struct CqEquivSystem CqEquivSystem",
    ] {
        assert!(text.contains(symbol), "missing {symbol}");
    }
    match Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; syntax check skipped"),
    }
}
