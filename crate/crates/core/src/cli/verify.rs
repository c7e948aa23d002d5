//! Randomized kernel-versus-oracle comparison plus invariant checks.

use std::fmt::Write as _;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::request::IntegralRequest;
use super::Kernel;
use crate::element::{ElementKind, HalfSpaceCut};
use crate::{oracle, BoundaryMode, PolyOrder};

pub const DEFAULT_ELEMENTS: [ElementKind; 7] = [
    ElementKind::Segment,
    ElementKind::SQUARE,
    ElementKind::CUBE,
    ElementKind::Hypercube(4),
    ElementKind::Triangle,
    ElementKind::Tetrahedron,
    ElementKind::Prism,
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub elements: Vec<ElementKind>,
    pub max_degree: u32,
}

/// What was compared; each check has its own tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Oracle,
    Complement,
    Symmetry,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Complement => "complement",
            Check::Symmetry => "symmetry",
        }
    }

    /// Error relative to the allowed tolerance; `> 1` fails.
    fn ratio(self, err: f64, reference: f64) -> f64 {
        let tol = match self {
            Check::Oracle => 1e-10_f64.max(1e-9 * reference.abs()),
            Check::Complement => 1e-12_f64.max(1e-12 * reference.abs()),
            Check::Symmetry => 1e-13 * (1.0 + reference.abs()),
        };
        if err.is_nan() {
            f64::INFINITY
        } else {
            err / tol
        }
    }
}

#[derive(Debug, Clone, Default)]
struct ElementStats {
    cases: usize,
    worst: [f64; 3],
    errors: usize,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub check: &'static str,
    pub ratio: f64,
    pub request: IntegralRequest,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    config: VerifyConfig,
    stats: Vec<(ElementKind, ElementStats)>,
    worst: Option<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.stats.iter().all(|(_, s)| s.errors == 0)
            && self.worst.as_ref().is_none_or(|f| f.ratio <= 1.0)
    }

    /// Case with the largest error-to-tolerance ratio, if any case failed.
    pub fn worst_failure(&self) -> Option<&Failure> {
        self.worst.as_ref().filter(|f| f.ratio > 1.0)
    }

    /// Deterministic text report (no timings).
    pub fn render(&self) -> String {
        let c = &self.config;
        let names: Vec<String> = c.elements.iter().map(|k| k.to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify seed={} trials={} max_degree={} elements={}",
            c.seed,
            c.trials,
            c.max_degree,
            names.join(",")
        );
        for (kind, s) in &self.stats {
            let ok = s.errors == 0 && s.worst.iter().all(|&r| r <= 1.0);
            let _ = writeln!(
                out,
                "{kind}: cases={} oracle={:.3e} complement={:.3e} symmetry={:.3e} errors={} {}",
                s.cases,
                s.worst[0],
                s.worst[1],
                s.worst[2],
                s.errors,
                if ok { "ok" } else { "FAIL" }
            );
        }
        if let Some(f) = self.worst_failure() {
            let json = serde_json::to_string(&f.request).unwrap_or_default();
            let _ = writeln!(
                out,
                "worst: check={} ratio={:.3e} request={json}",
                f.check, f.ratio
            );
        }
        let _ = writeln!(
            out,
            "result: {}",
            if self.passed() { "pass" } else { "FAIL" }
        );
        out
    }
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

fn powers(rng: &mut ChaCha8Rng, arity: usize, max_degree: u32) -> Vec<u32> {
    let total = rng.random_range(0..=max_degree);
    let mut p = vec![0; arity];
    for _ in 0..total {
        p[rng.random_range(0..arity)] += 1;
    }
    p
}

fn request(kind: ElementKind, cut: &HalfSpaceCut, powers: &[u32], s: PolyOrder) -> IntegralRequest {
    IntegralRequest {
        element: kind.to_string(),
        dim: None,
        normal: cut.normal.clone(),
        d: cut.d,
        powers: powers.to_vec(),
        s: s.get(),
        boundary_mode: BoundaryMode::Half,
        normalize: false,
    }
}

/// Runs the comparison with the given kernel (normally [`crate::integrate`]).
pub fn verify(config: &VerifyConfig, kernel: &Kernel) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mode = BoundaryMode::Half;
    let mut stats: Vec<(ElementKind, ElementStats)> = config
        .elements
        .iter()
        .map(|&k| (k, ElementStats::default()))
        .collect();
    let mut worst: Option<Failure> = None;

    for _ in 0..config.trials {
        for (kind, st) in stats.iter_mut() {
            let kind = *kind;
            let normal = unit_normal(&mut rng, kind.dim());
            let reach: f64 = normal.iter().map(|a| a.abs()).sum();
            let d = rng.random_range(-reach..reach);
            let cut = HalfSpaceCut::new(normal, d);
            let neg = cut.negated();
            let pw = powers(&mut rng, kind.arity(), config.max_degree);
            let variant = crate::element::variant_for(kind, &cut);
            let full = kind.full_moment(variant, &pw);

            let mut record = |check: Check, ratio: f64, s: PolyOrder, st: &mut ElementStats| {
                let slot = match check {
                    Check::Oracle => 0,
                    Check::Complement => 1,
                    Check::Symmetry => 2,
                };
                st.worst[slot] = st.worst[slot].max(ratio);
                if worst.as_ref().is_none_or(|w| ratio > w.ratio) {
                    worst = Some(Failure {
                        check: check.name(),
                        ratio,
                        request: request(kind, &cut, &pw, s),
                    });
                }
            };

            for s in [PolyOrder::SUBDOMAIN, PolyOrder::INTERFACE] {
                st.cases += 1;
                let (Ok(value), Ok(flipped)) = (
                    kernel(kind, &cut, &pw, s, mode),
                    kernel(kind, &neg, &pw, s, mode),
                ) else {
                    st.errors += 1;
                    continue;
                };
                let Ok(expected) = oracle::integrate(kind, &cut, &pw, s, mode) else {
                    st.errors += 1;
                    continue;
                };
                let (value, flipped) = (value.value, flipped.value);
                record(
                    Check::Oracle,
                    Check::Oracle.ratio((value - expected).abs(), expected),
                    s,
                    st,
                );
                if s == PolyOrder::SUBDOMAIN {
                    let err = (value + flipped - full).abs();
                    record(Check::Complement, Check::Complement.ratio(err, full), s, st);
                } else {
                    let err = (value - flipped).abs();
                    record(Check::Symmetry, Check::Symmetry.ratio(err, value), s, st);
                }
            }
        }
    }
    VerifyReport {
        config: config.clone(),
        stats,
        worst,
    }
}
