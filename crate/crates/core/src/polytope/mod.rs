//! Exact rational polytopes in small dimension: hulls, volumes, Minkowski
//! sums, mixed volumes, hypersimplices and slices of the cube `[0, d]^n`.

mod hull;
mod linalg;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use hull::Facet;

use crate::arith::{factorial, parse_rational, rational_from_int, Rational};
use crate::error::{Error, Result};

/// A point with exact rational coordinates.
pub type Point = Vec<Rational>;

/// Largest affine dimension handled by the hull code.
pub const MAX_HULL_DIM: usize = 8;
/// Largest ambient dimension accepted for a polytope.
pub const MAX_AMBIENT_DIM: usize = 12;
/// Largest number of polytopes accepted by [`mixed_volume`].
pub const MAX_MIXED_VOLUME_ARITY: usize = 6;
/// Largest `N` accepted by [`mv_family`].
pub const MAX_MV_FAMILY_N: usize = 5;

/// Limits applied to hull computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HullConfig {
    pub max_points: usize,
}

impl Default for HullConfig {
    fn default() -> Self {
        HullConfig { max_points: 5000 }
    }
}

/// Euclidean volume of a polytope, or the fact that it is lower-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Volume {
    Full(Rational),
    Degenerate { affine_dim: usize },
}

impl Volume {
    /// The volume, zero for a degenerate polytope.
    pub fn value(&self) -> Rational {
        match self {
            Volume::Full(v) => v.clone(),
            Volume::Degenerate { .. } => Rational::zero(),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Volume::Degenerate { .. })
    }
}

/// Hull data cached on a polytope.
#[derive(Clone, Debug)]
pub struct HullInfo {
    pub affine_dim: usize,
    pub facets: Vec<Facet>,
    volume: Volume,
}

/// A polytope given by its vertices.
#[derive(Debug)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    hull: OnceLock<HullInfo>,
}

impl Clone for VPolytope {
    fn clone(&self) -> Self {
        let hull = OnceLock::new();
        if let Some(h) = self.hull.get() {
            let _ = hull.set(h.clone());
        }
        VPolytope { dim: self.dim, vertices: self.vertices.clone(), hull }
    }
}

impl PartialEq for VPolytope {
    /// Same ambient dimension and the same vertex set.
    fn eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let mut a = self.vertices.clone();
        let mut b = other.vertices.clone();
        a.sort();
        b.sort();
        a == b
    }
}

fn check_points(points: &[Point], config: &HullConfig) -> Result<usize> {
    let first = points.first().ok_or_else(|| Error::EmptyInput("convex hull of no points".into()))?;
    let dim = first.len();
    if dim > MAX_AMBIENT_DIM {
        return Err(Error::CapExceeded(format!("ambient dimension {dim} > {MAX_AMBIENT_DIM}")));
    }
    if points.len() > config.max_points {
        return Err(Error::CapExceeded(format!("{} points > cap {}", points.len(), config.max_points)));
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch { left: dim, right: p.len() });
    }
    Ok(dim)
}

fn hull_of(points: &[Point], dim: usize) -> Result<(Vec<usize>, HullInfo)> {
    let data = hull::compute(points, dim, MAX_HULL_DIM)
        .map_err(|r| Error::CapExceeded(format!("affine dimension {r} > {MAX_HULL_DIM}")))?;
    let volume = if data.affine_dim == dim {
        Volume::Full(data.chart_volume)
    } else {
        Volume::Degenerate { affine_dim: data.affine_dim }
    };
    Ok((data.vertex_indices, HullInfo { affine_dim: data.affine_dim, facets: data.facets, volume }))
}

/// Convex hull of a finite point set with the default limits.
pub fn convex_hull(points: &[Point]) -> Result<VPolytope> {
    convex_hull_with(points, &HullConfig::default())
}

pub fn convex_hull_with(points: &[Point], config: &HullConfig) -> Result<VPolytope> {
    let dim = check_points(points, config)?;
    let (indices, info) = hull_of(points, dim)?;
    let vertices = indices.iter().map(|&i| points[i].clone()).collect();
    let hull = OnceLock::new();
    let _ = hull.set(info);
    Ok(VPolytope { dim, vertices, hull })
}

impl VPolytope {
    /// Wraps a vertex list that is already irredundant.
    fn from_vertices(dim: usize, vertices: Vec<Point>) -> Self {
        VPolytope { dim, vertices, hull: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Hull data, computed on first use.
    pub fn hull(&self) -> Result<&HullInfo> {
        if let Some(h) = self.hull.get() {
            return Ok(h);
        }
        let (_, info) = hull_of(&self.vertices, self.dim)?;
        Ok(self.hull.get_or_init(|| info))
    }

    pub fn facets(&self) -> Result<&[Facet]> {
        Ok(&self.hull()?.facets)
    }

    pub fn affine_dim(&self) -> Result<usize> {
        Ok(self.hull()?.affine_dim)
    }

    /// Exact Euclidean volume in the ambient space.
    pub fn volume(&self) -> Result<Volume> {
        Ok(self.hull()?.volume.clone())
    }

    pub fn scale(&self, t: &Rational) -> VPolytope {
        if t.is_zero() {
            return VPolytope::from_vertices(self.dim, vec![vec![Rational::zero(); self.dim]]);
        }
        let vertices = self.vertices.iter().map(|v| v.iter().map(|x| x * t).collect()).collect();
        VPolytope::from_vertices(self.dim, vertices)
    }

    pub fn scale_int(&self, t: i64) -> VPolytope {
        self.scale(&rational_from_int(t))
    }

    /// The polytope `{p}`.
    pub fn point(p: Point) -> VPolytope {
        VPolytope::from_vertices(p.len(), vec![p])
    }

    /// The segment from `a` to `b`.
    pub fn segment(a: Point, b: Point) -> Result<VPolytope> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
        }
        if a == b {
            return Ok(VPolytope::point(a));
        }
        Ok(VPolytope::from_vertices(a.len(), vec![a, b]))
    }

    /// The segment from the origin to `(1, ..., 1)`.
    pub fn diagonal_segment(dim: usize) -> VPolytope {
        VPolytope::from_vertices(dim, vec![vec![Rational::zero(); dim], vec![Rational::one(); dim]])
    }

    /// The cube `[0, 1]^dim`.
    pub fn unit_cube(dim: usize) -> VPolytope {
        let vertices = (0..1u32 << dim)
            .map(|mask| (0..dim).map(|i| rational_from_int(((mask >> i) & 1) as i64)).collect())
            .collect();
        VPolytope::from_vertices(dim, vertices)
    }

    /// The simplex `conv{0, e_1, ..., e_dim}`.
    pub fn standard_simplex(dim: usize) -> VPolytope {
        let mut vertices = vec![vec![Rational::zero(); dim]];
        for i in 0..dim {
            let mut v = vec![Rational::zero(); dim];
            v[i] = Rational::one();
            vertices.push(v);
        }
        VPolytope::from_vertices(dim, vertices)
    }
}

/// `P + Q = conv{p + q}`.
pub fn minkowski_sum(p: &VPolytope, q: &VPolytope) -> Result<VPolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { left: p.dim, right: q.dim });
    }
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Point>());
        }
    }
    sums.sort();
    sums.dedup();
    convex_hull(&sums)
}

fn minkowski_sum_all(polys: &[&VPolytope]) -> Result<VPolytope> {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = minkowski_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Mixed volume of `n` polytopes in `R^n`, normalized so that
/// `MV(P, ..., P) = n! vol(P)`.
///
/// Computed by inclusion-exclusion over the `2^n - 1` nonempty subsets:
/// `MV = sum_S (-1)^{n - |S|} vol(sum_{i in S} P_i)`.
pub fn mixed_volume(polytopes: &[VPolytope]) -> Result<Rational> {
    let n = polytopes.len();
    if n == 0 {
        return Err(Error::EmptyInput("mixed volume of no polytopes".into()));
    }
    if n > MAX_MIXED_VOLUME_ARITY {
        return Err(Error::CapExceeded(format!("{n} polytopes > {MAX_MIXED_VOLUME_ARITY}")));
    }
    if let Some(p) = polytopes.iter().find(|p| p.dim != n) {
        return Err(Error::DimensionMismatch { left: n, right: p.dim });
    }
    let terms: Result<Vec<Rational>> = (1u32..1 << n)
        .into_par_iter()
        .map(|mask| {
            let members: Vec<&VPolytope> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &polytopes[i]).collect();
            let vol = minkowski_sum_all(&members)?.volume()?.value();
            let sign = (n - members.len()).is_multiple_of(2);
            Ok(if sign { vol } else { -vol })
        })
        .collect();
    Ok(terms?.into_iter().fold(Rational::zero(), |a, b| a + b))
}

/// The hypersimplex `{x in [0,1]^n : sum x = k}`; vertices are the 0/1
/// vectors with `k` ones, in lexicographically decreasing order.
pub fn hypersimplex(k: usize, n: usize) -> Result<VPolytope> {
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("hypersimplex needs 0 < k < n, got k={k}, n={n}")));
    }
    if n > MAX_AMBIENT_DIM {
        return Err(Error::CapExceeded(format!("ambient dimension {n} > {MAX_AMBIENT_DIM}")));
    }
    let mut vertices = Vec::new();
    for mask in (0u32..1 << n).rev() {
        if mask.count_ones() as usize == k {
            // bit n-1-i is coordinate i, so decreasing masks are
            // lexicographically decreasing vectors
            vertices.push((0..n).map(|i| rational_from_int((mask >> (n - 1 - i) & 1) as i64)).collect());
        }
    }
    Ok(VPolytope::from_vertices(n, vertices))
}

/// Parameters of the slice `{x in [0,1]^n : sum x = c/d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceSpec {
    c: usize,
    d: usize,
    n: usize,
}

impl SliceSpec {
    pub fn new(c: usize, d: usize, n: usize) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidArgument("d and n must be positive".into()));
        }
        let g = c.gcd(&d);
        if g != 1 {
            return Err(Error::NotCoprime { c: c as u64, d: d as u64, gcd: g as u64 });
        }
        if c == 0 || c >= d * n {
            return Err(Error::InvalidArgument(format!("need 0 < c/d < n, got {c}/{d} with n = {n}")));
        }
        if n > MAX_AMBIENT_DIM {
            return Err(Error::CapExceeded(format!("ambient dimension {n} > {MAX_AMBIENT_DIM}")));
        }
        Ok(SliceSpec { c, d, n })
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The integer polytope `d * {x in [0,1]^n : sum x = c/d} = {x in [0,d]^n : sum x = c}`.
///
/// Its vertices have every coordinate in `{0, d}` except at most one, which
/// takes the remaining value in `(0, d)`. They are listed in
/// lexicographically decreasing order.
pub fn cube_slice(spec: SliceSpec) -> VPolytope {
    let SliceSpec { c, d, n } = spec;
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..1 << n {
        let full = mask.count_ones() as usize;
        if d * full > c {
            continue;
        }
        let rest = c - d * full;
        let base: Vec<usize> = (0..n).map(|i| if mask >> i & 1 == 1 { d } else { 0 }).collect();
        if rest == 0 {
            vertices.push(base);
        } else if rest < d {
            for j in (0..n).filter(|&j| mask >> j & 1 == 0) {
                let mut v = base.clone();
                v[j] = rest;
                vertices.push(v);
            }
        }
    }
    vertices.sort_by(|a, b| b.cmp(a));
    let vertices = vertices.into_iter().map(|v| v.into_iter().map(|x| rational_from_int(x as i64)).collect()).collect();
    VPolytope::from_vertices(n, vertices)
}

/// Normalized volume of a polytope lying in a hyperplane `sum x = const`:
/// `(n-1)!` times the Euclidean volume of its projection to the first
/// `n - 1` coordinates. The projection maps the lattice
/// `{sum a = 0} cap Z^n` onto `Z^{n-1}`, so this is the lattice-normalized
/// volume with the standard simplex `Delta_{1,n}` at 1.
pub fn normalized_volume_slice(p: &VPolytope) -> Result<Rational> {
    let n = p.dim;
    if n == 0 {
        return Err(Error::InvalidArgument("normalized volume needs n >= 1".into()));
    }
    let sums: Vec<Rational> = p.vertices.iter().map(|v| v.iter().sum()).collect();
    if sums.iter().any(|s| s != &sums[0]) {
        return Err(Error::NotInSumHyperplane);
    }
    let projected: Vec<Point> = p.vertices.iter().map(|v| v[..n - 1].to_vec()).collect();
    let vol = convex_hull(&projected)?.volume()?.value();
    Ok(vol * Rational::from_integer(factorial(n as u64 - 1)))
}

/// `MV(Delta, 2 Delta, ..., (N-1) Delta, I)` for `Delta = Delta_{m,N}` and `I`
/// the diagonal segment; equals `N! <N-1, m-1>`.
pub fn mv_family(m: usize, big_n: usize) -> Result<BigInt> {
    mv_family_sparse(m, big_n, 1)
}

/// `MV(P, 2P, ..., (N/d - 1)P, I)` in `R^{N/d}` for `P = d Delta_{m/d, N/d}`;
/// equals `(N/d)! <N-1, m-1>_d`. With `d = 1` this is [`mv_family`].
pub fn mv_family_sparse(m: usize, big_n: usize, d: usize) -> Result<BigInt> {
    if m == 0 || m >= big_n {
        return Err(Error::InvalidArgument(format!("need 0 < m < N, got m={m}, N={big_n}")));
    }
    if d == 0 || !big_n.is_multiple_of(d) {
        return Err(Error::NotDivisible { d: d as u64, n: big_n as u64 });
    }
    let n = big_n / d;
    if n > MAX_MV_FAMILY_N {
        return Err(Error::CapExceeded(format!("N/d = {n} > {MAX_MV_FAMILY_N}")));
    }
    let base = cube_slice(SliceSpec::new(m, d, n)?);
    let mut family: Vec<VPolytope> = (1..n).map(|j| base.scale_int(j as i64)).collect();
    family.push(VPolytope::diagonal_segment(n));
    let mv = mixed_volume(&family)?;
    if !mv.is_integer() {
        return Err(Error::InvalidArgument(format!("non-integral mixed volume {mv}")));
    }
    Ok(mv.to_integer())
}

/// Exchange format for polytopes: ambient dimension and vertex lists with
/// coordinates as `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dimension: usize,
    pub polytopes: Vec<PolytopeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeEntry {
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("polytope document: {e}")))
    }

    /// Hulls of the listed point sets.
    pub fn to_polytopes(&self) -> Result<Vec<VPolytope>> {
        self.polytopes
            .iter()
            .map(|entry| {
                let points = entry
                    .vertices
                    .iter()
                    .map(|v| {
                        if v.len() != self.dimension {
                            return Err(Error::DimensionMismatch { left: self.dimension, right: v.len() });
                        }
                        v.iter().map(|s| parse_rational(s)).collect::<Result<Point>>()
                    })
                    .collect::<Result<Vec<Point>>>()?;
                convex_hull(&points)
            })
            .collect()
    }

    pub fn from_polytopes(polys: &[VPolytope]) -> Self {
        let dimension = polys.first().map_or(0, |p| p.dim);
        let polytopes = polys
            .iter()
            .map(|p| PolytopeEntry {
                vertices: p.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
            })
            .collect();
        PolytopeDocument { dimension, polytopes }
    }
}
