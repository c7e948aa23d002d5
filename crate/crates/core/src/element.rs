//! Uniform entry point over all reference elements.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::hypercube::{self, HypercubeCut};
use crate::line_segment::{self, SegmentCut};
use crate::prism::{self, PrismCut};
use crate::tetrahedron::{self, TetCut, TetVariant};
use crate::triangle::{self, TriangleCut};
use crate::{BoundaryMode, Error, PolyOrder, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Segment,
    Hypercube(usize),
    Triangle,
    Tetrahedron,
    Prism,
}

impl ElementKind {
    pub const SQUARE: ElementKind = ElementKind::Hypercube(2);
    pub const CUBE: ElementKind = ElementKind::Hypercube(3);

    pub fn new_hypercube(dim: usize) -> Result<ElementKind> {
        if dim == 0 || dim > hypercube::MAX_DIM {
            return Err(Error::Dimension {
                dim,
                max: hypercube::MAX_DIM,
            });
        }
        Ok(if dim == 1 {
            ElementKind::Segment
        } else {
            ElementKind::Hypercube(dim)
        })
    }

    pub fn dim(self) -> usize {
        match self {
            ElementKind::Segment => 1,
            ElementKind::Hypercube(dim) => dim,
            ElementKind::Triangle => 2,
            ElementKind::Tetrahedron | ElementKind::Prism => 3,
        }
    }

    /// Half-space description `g·x + h >= 0` of the reference domain.
    pub fn inequalities(self) -> Vec<(Vec<f64>, f64)> {
        let unit = |dim: usize, i: usize, v: f64| {
            let mut g = vec![0.0; dim];
            g[i] = v;
            g
        };
        match self {
            ElementKind::Segment | ElementKind::Hypercube(_) => {
                let dim = self.dim();
                (0..dim)
                    .flat_map(|i| [(unit(dim, i, 1.0), 0.0), (unit(dim, i, -1.0), 1.0)])
                    .collect()
            }
            ElementKind::Triangle => vec![
                (vec![1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 0.0),
                (vec![-1.0, -1.0], 1.0),
            ],
            ElementKind::Tetrahedron => vec![
                (unit(3, 0, 1.0), 0.0),
                (unit(3, 1, 1.0), 0.0),
                (unit(3, 2, 1.0), 0.0),
                (vec![-1.0, -1.0, -1.0], 1.0),
            ],
            ElementKind::Prism => vec![
                (unit(3, 0, 1.0), 0.0),
                (unit(3, 1, 1.0), 0.0),
                (vec![-1.0, -1.0, 0.0], 1.0),
                (unit(3, 2, 1.0), 1.0),
                (unit(3, 2, -1.0), 1.0),
            ],
        }
    }

    /// Vertices of the reference domain.
    pub fn vertices(self) -> Vec<Vec<f64>> {
        match self {
            ElementKind::Segment | ElementKind::Hypercube(_) => {
                let dim = self.dim();
                (0..1usize << dim)
                    .map(|bits| (0..dim).map(|i| ((bits >> i) & 1) as f64).collect())
                    .collect()
            }
            ElementKind::Triangle => vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]],
            ElementKind::Tetrahedron => vec![
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
            ],
            ElementKind::Prism => {
                let mut v = Vec::with_capacity(6);
                for z in [-1.0, 1.0] {
                    for (x, y) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
                        v.push(vec![x, y, z]);
                    }
                }
                v
            }
        }
    }

    /// Number of exponents of a basis element.
    pub fn arity(self) -> usize {
        self.dim()
    }

    /// Weight of the reference measure (the prism integrates against `dV/2`).
    pub fn density(self) -> f64 {
        match self {
            ElementKind::Prism => 0.5,
            _ => 1.0,
        }
    }

    /// Basis element with the given exponents at a point of the reference
    /// domain. `variant` only matters for the tetrahedron.
    pub fn basis_value(self, variant: Option<TetVariant>, powers: &[u32], p: &[f64]) -> f64 {
        let pw = |x: f64, k: u32| x.powi(k as i32);
        match self {
            ElementKind::Segment | ElementKind::Hypercube(_) => {
                p.iter().zip(powers).map(|(&x, &k)| pw(x, k)).product()
            }
            ElementKind::Triangle => pw(1.0 - p[0], powers[0]) * pw(p[1], powers[1]),
            ElementKind::Tetrahedron => variant
                .unwrap_or(TetVariant::V1)
                .basis_value([p[0], p[1], p[2]], [powers[0], powers[1], powers[2]]),
            ElementKind::Prism => {
                pw(1.0 - p[0], powers[0]) * pw(p[1], powers[1]) * pw((1.0 + p[2]) / 2.0, powers[2])
            }
        }
    }

    /// Integral of a basis element over the whole reference domain.
    pub fn full_moment(self, variant: Option<TetVariant>, powers: &[u32]) -> f64 {
        match self {
            ElementKind::Segment | ElementKind::Hypercube(_) => hypercube::full_moment(powers),
            ElementKind::Triangle => triangle::full_moment(powers[0], powers[1]),
            ElementKind::Tetrahedron => {
                let v = variant.unwrap_or(TetVariant::V1);
                tetrahedron::full_moment(v.canonical_powers([powers[0], powers[1], powers[2]]))
            }
            ElementKind::Prism => prism::full_moment([powers[0], powers[1], powers[2]]),
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKind::Segment => f.write_str("segment"),
            ElementKind::Hypercube(2) => f.write_str("square"),
            ElementKind::Hypercube(3) => f.write_str("cube"),
            ElementKind::Hypercube(dim) => write!(f, "hypercube{dim}"),
            ElementKind::Triangle => f.write_str("triangle"),
            ElementKind::Tetrahedron => f.write_str("tetrahedron"),
            ElementKind::Prism => f.write_str("prism"),
        }
    }
}

impl FromStr for ElementKind {
    type Err = Error;

    /// Accepts the names printed by `Display`, e.g. `square` or `hypercube4`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "segment" => Ok(ElementKind::Segment),
            "square" => Ok(ElementKind::SQUARE),
            "cube" => Ok(ElementKind::CUBE),
            "triangle" => Ok(ElementKind::Triangle),
            "tetrahedron" => Ok(ElementKind::Tetrahedron),
            "prism" => Ok(ElementKind::Prism),
            _ => match s.strip_prefix("hypercube").map(str::parse::<usize>) {
                Some(Ok(dim)) => ElementKind::new_hypercube(dim),
                _ => Err(Error::Unsupported(format!("unknown element `{s}`"))),
            },
        }
    }
}

/// Hyperplane `normal·x + d`; the positive side is the subdomain.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpaceCut {
    pub normal: Vec<f64>,
    pub d: f64,
}

impl HalfSpaceCut {
    pub fn new(normal: Vec<f64>, d: f64) -> HalfSpaceCut {
        HalfSpaceCut { normal, d }
    }

    pub fn norm(&self) -> f64 {
        self.normal.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> HalfSpaceCut {
        HalfSpaceCut {
            normal: self.normal.iter().map(|a| -a).collect(),
            d: -self.d,
        }
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        self.normal.iter().zip(p).map(|(a, x)| a * x).sum::<f64>() + self.d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    /// Basis family of a tetrahedron result; `None` for other elements.
    pub variant: Option<TetVariant>,
}

/// Integral of a basis element against the Heaviside (`s = 0`) or Dirac
/// (`s = -1`) weight of the cut, or the higher order weights used
/// internally.
pub fn integrate(
    kind: ElementKind,
    cut: &HalfSpaceCut,
    powers: &[u32],
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<Integral> {
    let dim = kind.dim();
    if cut.normal.len() != dim {
        return Err(Error::Arity {
            field: "normal",
            expected: dim,
            got: cut.normal.len(),
        });
    }
    if powers.len() != dim {
        return Err(Error::Arity {
            field: "powers",
            expected: dim,
            got: powers.len(),
        });
    }
    let n = &cut.normal;
    let plain = |value| Integral {
        value,
        variant: None,
    };
    match kind {
        ElementKind::Segment => {
            let c = SegmentCut::new(n[0], cut.d)?;
            line_segment::lsi(c, powers[0], s, mode).map(plain)
        }
        ElementKind::Hypercube(_) => {
            let c = HypercubeCut::new(n.clone(), cut.d)?;
            hypercube::hci(&c, powers, s, mode).map(plain)
        }
        ElementKind::Triangle => {
            let c = TriangleCut::new(n[0], n[1], cut.d)?;
            triangle::tri(&c, powers[0], powers[1], s, mode).map(plain)
        }
        ElementKind::Tetrahedron => {
            let c = TetCut::new(n[0], n[1], n[2], cut.d)?;
            let (value, variant) =
                tetrahedron::tti(&c, [powers[0], powers[1], powers[2]], s, mode)?;
            Ok(Integral {
                value,
                variant: Some(variant),
            })
        }
        ElementKind::Prism => {
            let c = PrismCut::new(n[0], n[1], n[2], cut.d)?;
            prism::pri(&c, [powers[0], powers[1], powers[2]], s, mode).map(plain)
        }
    }
}

/// Basis family the tetrahedron kernel uses for this cut; `None` for other
/// elements.
pub fn variant_for(kind: ElementKind, cut: &HalfSpaceCut) -> Option<TetVariant> {
    match kind {
        ElementKind::Tetrahedron if cut.normal.len() == 3 => Some(TetVariant::select(
            cut.normal[0],
            cut.normal[1],
            cut.normal[2],
        )),
        _ => None,
    }
}

/// Whether the plane `n·x + d = 0` contains one of the listed facets, tested
/// exactly on the facet vertices.
pub(crate) fn contains_facet<const N: usize>(
    normal: &[f64],
    d: f64,
    vertices: &[[f64; N]],
    facets: &[&[usize]],
) -> bool {
    let on_plane = |v: &[f64; N]| normal.iter().zip(v).map(|(a, x)| a * x).sum::<f64>() + d == 0.0;
    facets
        .iter()
        .any(|f| f.iter().all(|&i| on_plane(&vertices[i])))
}
