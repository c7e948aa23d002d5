use cutquad::{integrate, oracle, BoundaryMode, ElementKind, HalfSpaceCut, PolyOrder};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ELEMENTS: [ElementKind; 7] = [
    ElementKind::Segment,
    ElementKind::SQUARE,
    ElementKind::CUBE,
    ElementKind::Hypercube(4),
    ElementKind::Triangle,
    ElementKind::Tetrahedron,
    ElementKind::Prism,
];

fn random_powers(rng: &mut ChaCha8Rng, arity: usize, max_degree: u32) -> Vec<u32> {
    let total = rng.random_range(0..=max_degree);
    let mut p = vec![0; arity];
    for _ in 0..total {
        p[rng.random_range(0..arity)] += 1;
    }
    p
}

fn unit_normal(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let n: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let norm = n.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 0.1 {
            return n.into_iter().map(|a| a / norm).collect();
        }
    }
}

#[test]
fn kernels_match_oracle_on_random_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for kind in ELEMENTS {
        let mut worst: f64 = 0.0;
        for _ in 0..60 {
            let n = unit_normal(&mut rng, kind.dim());
            let d = rng.random_range(-1.5..1.5);
            let cut = HalfSpaceCut::new(n, d);
            let powers = random_powers(&mut rng, kind.arity(), 6);
            for s in [PolyOrder::SUBDOMAIN, PolyOrder::INTERFACE] {
                let got = integrate(kind, &cut, &powers, s, BoundaryMode::Half)
                    .unwrap()
                    .value;
                let want = oracle::integrate(kind, &cut, &powers, s, BoundaryMode::Half).unwrap();
                let err = (got - want).abs();
                worst = worst.max(err);
                assert!(
                    err <= 1e-10_f64.max(1e-9 * want.abs()),
                    "{kind} {cut:?} {powers:?} s={}: {got} vs {want}",
                    s.get()
                );
            }
        }
        println!("{kind}: worst {worst:.2e}");
    }
}

#[test]
fn boundary_modes_match_oracle_on_facets() {
    let cases: Vec<(ElementKind, Vec<f64>, f64)> = vec![
        (ElementKind::SQUARE, vec![1.0, 0.0], -1.0),
        (ElementKind::SQUARE, vec![0.0, -1.0], 0.0),
        (ElementKind::CUBE, vec![0.0, 0.0, 1.0], 0.0),
        (ElementKind::Triangle, vec![0.0, 1.0], 0.0),
        (ElementKind::Triangle, vec![-1.0, 0.0], 0.0),
        (ElementKind::Tetrahedron, vec![1.0, 0.0, 0.0], 0.0),
        (ElementKind::Tetrahedron, vec![-1.0, -1.0, -1.0], 1.0),
        (ElementKind::Prism, vec![0.0, 0.0, -1.0], -1.0),
        (ElementKind::Prism, vec![-1.0, -1.0, 0.0], 1.0),
        (ElementKind::Prism, vec![0.0, 1.0, 0.0], 0.0),
    ];
    for (kind, n, d) in cases {
        let norm = n.iter().map(|a| a * a).sum::<f64>().sqrt();
        let cut = HalfSpaceCut::new(n.iter().map(|a| a / norm).collect(), d / norm);
        for powers in [vec![0; kind.arity()], vec![1; kind.arity()]] {
            for mode in [BoundaryMode::Half, BoundaryMode::Full] {
                let got = integrate(kind, &cut, &powers, PolyOrder::INTERFACE, mode)
                    .unwrap()
                    .value;
                let want =
                    oracle::integrate(kind, &cut, &powers, PolyOrder::INTERFACE, mode).unwrap();
                assert!(
                    (got - want).abs() < 1e-13,
                    "{kind} {cut:?} {powers:?} {mode:?}: {got} vs {want}"
                );
            }
        }
    }
}
