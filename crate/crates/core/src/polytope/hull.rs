//! Exact convex hulls by placing triangulation.
//!
//! Points are inserted one at a time. Each insertion cones the new point over
//! every boundary simplex it sees strictly from outside, and the boundary is
//! patched along the horizon. Degenerate configurations need no special
//! handling because only strictly visible simplices are replaced.
//!
//! All arithmetic happens on integer chart coordinates: the inputs are
//! scaled by the lcm of their denominators and restricted to a set of
//! coordinates on which the projection of the affine hull is injective.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::linalg::{cofactor_normal, det, dot, primitive, sub, EchelonBasis};
use crate::arith::{factorial, Rational};

/// An oriented boundary simplex: `normal . x <= offset` holds on the hull.
/// `normal` is the unreduced cofactor vector, so `normal . p - offset` is the
/// signed determinant of the cone from `p`.
struct BoundarySimplex {
    vertices: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// A facet of the hull: `normal . x <= offset` in ambient coordinates.
/// For lower-dimensional hulls these are relative facets, valid on the
/// affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    /// Indices into the vertex list of the hull.
    pub vertices: Vec<usize>,
}

/// Result of a hull computation on a list of points.
#[derive(Clone, Debug)]
pub(crate) struct HullData {
    pub affine_dim: usize,
    /// Indices of the input points that are vertices, ascending.
    pub vertex_indices: Vec<usize>,
    /// Facets, with vertex references into `vertex_indices` positions.
    pub facets: Vec<Facet>,
    /// Volume measured in the chart (equals the ambient volume when the hull
    /// is full-dimensional).
    pub chart_volume: Rational,
}

fn lcm_of_denominators(points: &[Vec<Rational>]) -> BigInt {
    let mut l = BigInt::one();
    for p in points {
        for x in p {
            l = l.lcm(x.denom());
        }
    }
    l
}

/// Computes the hull, or returns the affine dimension when it exceeds
/// `max_affine_dim`.
pub(crate) fn compute(points: &[Vec<Rational>], ambient_dim: usize, max_affine_dim: usize) -> Result<HullData, usize> {
    debug_assert!(!points.is_empty());
    let scale = lcm_of_denominators(points);
    let scaled: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * Rational::from_integer(scale.clone())).to_integer()).collect())
        .collect();

    // affine chart
    let origin: Vec<Rational> = points[0].clone();
    let mut basis = EchelonBasis::new();
    for p in points.iter().skip(1) {
        let diff: Vec<Rational> = p.iter().zip(&origin).map(|(a, b)| a - b).collect();
        basis.insert(&diff);
        if basis.rank() == ambient_dim {
            break;
        }
    }
    let pivots = basis.pivots();
    let r = pivots.len();
    if r > max_affine_dim {
        return Err(r);
    }
    let chart: Vec<Vec<BigInt>> = scaled.iter().map(|p| pivots.iter().map(|&c| p[c].clone()).collect()).collect();

    let tri = triangulate(&chart, r);

    // group boundary simplices into facets by primitive hyperplane
    let mut planes: BTreeMap<(Vec<BigInt>, BigInt), ()> = BTreeMap::new();
    for s in &tri.boundary {
        planes.insert(primitive(&s.normal, &s.offset), ());
    }
    let planes: Vec<(Vec<BigInt>, BigInt)> = planes.into_keys().collect();

    // a used point is a vertex iff the facets through it pin it down
    let mut vertex_indices = Vec::new();
    if r == 0 {
        vertex_indices.push(0);
    } else {
        for &i in &tri.used {
            let mut normals = EchelonBasis::new();
            for (normal, offset) in &planes {
                if &dot(normal, &chart[i]) == offset {
                    let as_rat: Vec<Rational> = normal.iter().map(|v| Rational::from_integer(v.clone())).collect();
                    normals.insert(&as_rat);
                }
            }
            if normals.rank() == r {
                vertex_indices.push(i);
            }
        }
        vertex_indices.sort_unstable();
    }

    let facets = planes
        .iter()
        .map(|(normal, offset)| {
            let members = vertex_indices
                .iter()
                .enumerate()
                .filter(|(_, &i)| &dot(normal, &chart[i]) == offset)
                .map(|(pos, _)| pos)
                .collect();
            let mut ambient = vec![BigInt::zero(); ambient_dim];
            for (k, &c) in pivots.iter().enumerate() {
                ambient[c] = normal[k].clone();
            }
            Facet { normal: ambient, offset: Rational::new(offset.clone(), scale.clone()), vertices: members }
        })
        .collect();

    let denom = factorial(r as u64) * num_traits::pow(scale, r);
    Ok(HullData { affine_dim: r, vertex_indices, facets, chart_volume: Rational::new(tri.det_sum, denom) })
}

struct Triangulation {
    used: Vec<usize>,
    boundary: Vec<BoundarySimplex>,
    /// Sum of |det| over the simplices.
    det_sum: BigInt,
}

fn oriented_simplex(
    pts: &[Vec<BigInt>],
    vertices: Vec<usize>,
    r: usize,
    interior: &[BigInt],
    interior_weight: &BigInt,
) -> BoundarySimplex {
    let base = &pts[vertices[0]];
    let rows: Vec<Vec<BigInt>> = vertices[1..].iter().map(|&v| sub(&pts[v], base)).collect();
    let mut normal = cofactor_normal(&rows, r);
    let mut offset = dot(&normal, base);
    // interior point is interior / interior_weight
    if dot(&normal, interior) > &offset * interior_weight {
        normal.iter_mut().for_each(|v| *v = -v.clone());
        offset = -offset;
    }
    BoundarySimplex { vertices, normal, offset }
}

/// Placing triangulation of full-dimensional integer points in `R^r`.
fn triangulate(pts: &[Vec<BigInt>], r: usize) -> Triangulation {
    if r == 0 {
        return Triangulation { used: vec![0], boundary: Vec::new(), det_sum: BigInt::one() };
    }

    // initial simplex: greedy affinely independent points in input order
    let to_rat = |v: &[BigInt]| v.iter().map(|x| Rational::from_integer(x.clone())).collect::<Vec<_>>();
    let mut start = vec![0usize];
    let mut basis = EchelonBasis::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let diff = to_rat(&sub(p, &pts[0]));
        if basis.insert(&diff) {
            start.push(i);
            if start.len() == r + 1 {
                break;
            }
        }
    }
    debug_assert_eq!(start.len(), r + 1);

    let mut interior = vec![BigInt::zero(); r];
    for &i in &start {
        for (acc, x) in interior.iter_mut().zip(&pts[i]) {
            *acc += x;
        }
    }
    let weight = BigInt::from(r + 1);

    let rows: Vec<Vec<BigInt>> = start[1..].iter().map(|&i| sub(&pts[i], &pts[start[0]])).collect();
    let mut det_sum = det(rows).abs();

    let mut boundary: Vec<BoundarySimplex> = (0..=r)
        .map(|skip| {
            let verts: Vec<usize> = start.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            oriented_simplex(pts, verts, r, &interior, &weight)
        })
        .collect();

    let mut used = start.clone();
    let in_start: std::collections::HashSet<usize> = start.iter().copied().collect();
    for (p_idx, p) in pts.iter().enumerate() {
        if in_start.contains(&p_idx) {
            continue;
        }
        let mut visible = Vec::new();
        let mut keep = Vec::with_capacity(boundary.len());
        for s in boundary.drain(..) {
            let height = dot(&s.normal, p) - &s.offset;
            if height.is_positive() {
                det_sum += height;
                visible.push(s);
            } else {
                keep.push(s);
            }
        }
        boundary = keep;
        if visible.is_empty() {
            continue;
        }
        used.push(p_idx);

        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for s in &visible {
            for skip in 0..s.vertices.len() {
                let mut ridge = s.vertices.clone();
                ridge.remove(skip);
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut horizon: Vec<Vec<usize>> =
            ridges.into_iter().filter(|(_, count)| *count == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p_idx);
            boundary.push(oriented_simplex(pts, verts, r, &interior, &weight));
        }
    }
    used.sort_unstable();
    Triangulation { used, boundary, det_sum }
}
