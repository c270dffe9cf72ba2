//! Test-space generators: triangulated surfaces, disks, hemispheres and
//! metric graphs, each with a canonical scalar field.

use super::{graph_geodesic, ComplexBuilder, ComplexError, ScalarField, SimplicialComplex, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Values of analytic fields are rounded to this quantum so that
/// analytically equal values tie exactly.
pub const FIELD_QUANTUM: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("unknown generator '{0}'")]
    Unknown(String),
    #[error("resolution h must be positive and finite, got {0}")]
    BadResolution(f64),
    #[error("invalid parameter for {name}: {reason}")]
    BadParameter { name: &'static str, reason: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    Point,
    Triangle,
    /// Unit interval as a path graph.
    Path,
    /// Unit circle as a polygon.
    Circle,
    /// Unit circle with a radial spoke from the center to (1, 0).
    Theta,
    /// Unit circle with a diameter: two junctions joined by three arcs.
    ThetaGraph,
    /// `r` circles of radius ½ glued at the origin.
    Wedge(usize),
    /// Unit disk in the plane.
    Disk,
    /// Unit sphere.
    Sphere,
    /// Closed upper unit hemisphere.
    Hemisphere,
    /// Torus of revolution, radii 1 and 0.4.
    Torus,
    /// The unit square with opposite sides identified, with the flat
    /// metric given by edge lengths only.
    FlatTorus,
    /// Closed orientable surface of genus `g`: a thickened plate with `g`
    /// holes in a row along the x-axis.
    Genus(usize),
}

impl Generator {
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Generators with a known reference table entry for the corank, as
    /// `(b1', b1)`.
    pub fn corank_and_b1(&self) -> Option<(usize, usize)> {
        Some(match *self {
            Generator::Point | Generator::Triangle | Generator::Path | Generator::Disk => (0, 0),
            Generator::Hemisphere | Generator::Sphere => (0, 0),
            Generator::Circle | Generator::Theta => (1, 1),
            Generator::ThetaGraph => (2, 2),
            Generator::Wedge(r) => (r, r),
            Generator::Torus | Generator::FlatTorus => (1, 2),
            Generator::Genus(g) => (g, 2 * g),
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Point => write!(f, "point"),
            Generator::Triangle => write!(f, "triangle"),
            Generator::Path => write!(f, "path"),
            Generator::Circle => write!(f, "circle"),
            Generator::Theta => write!(f, "theta"),
            Generator::ThetaGraph => write!(f, "theta-graph"),
            Generator::Wedge(r) => write!(f, "wedge:{r}"),
            Generator::Disk => write!(f, "disk"),
            Generator::Sphere => write!(f, "sphere"),
            Generator::Hemisphere => write!(f, "hemisphere"),
            Generator::Torus => write!(f, "torus"),
            Generator::FlatTorus => write!(f, "flat-torus"),
            Generator::Genus(g) => write!(f, "genus:{g}"),
        }
    }
}

impl FromStr for Generator {
    type Err = GeneratorError;

    /// Accepts `name`, `name:k` and `name(k)` / `name(g=k)` / `name(r=k)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (name, arg) = match s.find([':', '(']) {
            Some(i) => {
                let rest = s[i + 1..].trim_end_matches(')');
                let rest = rest.rsplit('=').next().unwrap_or(rest);
                (s[..i].trim().to_string(), Some(rest.trim().to_string()))
            }
            None => (s.clone(), None),
        };
        let count = |what: &'static str| -> Result<usize, GeneratorError> {
            let a = arg.as_deref().ok_or(GeneratorError::BadParameter {
                name: what,
                reason: "missing count".into(),
            })?;
            a.parse().map_err(|_| GeneratorError::BadParameter {
                name: what,
                reason: format!("'{a}' is not a count"),
            })
        };
        let g = match name.as_str() {
            "point" => Generator::Point,
            "triangle" => Generator::Triangle,
            "path" | "segment" => Generator::Path,
            "circle" => Generator::Circle,
            "theta" => Generator::Theta,
            "theta-graph" | "theta_graph" => Generator::ThetaGraph,
            "wedge" => Generator::Wedge(count("wedge")?),
            "disk" => Generator::Disk,
            "sphere" => Generator::Sphere,
            "hemisphere" => Generator::Hemisphere,
            "torus" => Generator::Torus,
            "flat-torus" | "flat_torus" => Generator::FlatTorus,
            "genus" => Generator::Genus(count("genus")?),
            _ => return Err(GeneratorError::Unknown(s)),
        };
        Ok(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub generator: Generator,
    /// Target edge length.
    pub h: f64,
}

impl SpaceSpec {
    pub fn new(generator: Generator, h: f64) -> Self {
        SpaceSpec { generator, h }
    }
}

/// Scalar fields available on every fixture.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FieldKind {
    /// The generator's canonical field.
    Canonical,
    /// Height along the fixture's preferred axis, slightly tilted so that
    /// the field is generic.
    Height,
    /// Graph-geodesic distance from a vertex.
    Distance(VertexId),
    /// Sum of random low-frequency sinusoids of the coordinates (or i.i.d.
    /// uniform vertex values when there are no coordinates).
    RandomSmooth(u64),
}

/// A generated complex together with its canonical field.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub generator: Generator,
    pub complex: SimplicialComplex,
    pub field: Option<ScalarField>,
    height: Option<ScalarField>,
}

impl Fixture {
    pub fn field_of(&self, kind: FieldKind) -> ScalarField {
        match kind {
            FieldKind::Canonical => self
                .field
                .clone()
                .unwrap_or_else(|| self.field_of(FieldKind::Height)),
            FieldKind::Height => self.height.clone().unwrap_or_else(|| {
                let n = self.complex.n_vertices();
                ScalarField::new((0..n).map(|v| v as f64).collect()).unwrap()
            }),
            FieldKind::Distance(p) => {
                ScalarField::new(graph_geodesic(&self.complex, p)).expect("fixtures are connected")
            }
            FieldKind::RandomSmooth(seed) => random_smooth_field(&self.complex, seed),
        }
    }
}

pub fn generate_space(spec: &SpaceSpec) -> Result<Fixture, GeneratorError> {
    let h = spec.h;
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeneratorError::BadResolution(h));
    }
    let g = spec.generator;
    let (complex, field, height) = match g {
        Generator::Point => {
            let c = ComplexBuilder::with_coords(vec![[0.0; 3]]).build()?;
            let f = constant(&c, 0.0);
            (c, Some(f.clone()), Some(f))
        }
        Generator::Triangle => {
            let mut b = ComplexBuilder::with_coords(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
            b.triangle(0, 1, 2);
            let c = b.build()?;
            let f = tilted_height(&c, 0);
            (c, Some(f.clone()), Some(f))
        }
        Generator::Path => path(h)?,
        Generator::Circle => circle(h)?,
        Generator::Theta => theta(h)?,
        Generator::ThetaGraph => theta_graph(h)?,
        Generator::Wedge(r) => wedge(r, h)?,
        Generator::Disk => {
            let c = disk(h)?;
            let f = coordinate(&c, 0);
            (c, Some(f), None)
        }
        Generator::Sphere => {
            let c = uv_sphere(h, false)?;
            let f = tilted_height(&c, 2);
            (c, Some(f.clone()), Some(f))
        }
        Generator::Hemisphere => hemisphere(h)?,
        Generator::Torus => {
            let c = torus(h)?;
            let f = tilted_height(&c, 0);
            (c, Some(f.clone()), Some(f))
        }
        Generator::FlatTorus => flat_torus(h)?,
        Generator::Genus(genus) => {
            if genus == 0 {
                return Err(GeneratorError::BadParameter {
                    name: "genus",
                    reason: "genus must be at least 1 (use sphere)".into(),
                });
            }
            let c = genus_surface(genus, h)?;
            let f = tilted_height(&c, 0);
            (c, Some(f.clone()), Some(f))
        }
    };
    let height = height.or_else(|| complex.coords().map(|_| tilted_height(&complex, 0)));
    Ok(Fixture {
        name: g.name(),
        generator: g,
        complex,
        field,
        height,
    })
}

type Generated = (SimplicialComplex, Option<ScalarField>, Option<ScalarField>);

fn constant(c: &SimplicialComplex, value: f64) -> ScalarField {
    ScalarField::new(vec![value; c.n_vertices()]).unwrap()
}

fn coordinate(c: &SimplicialComplex, axis: usize) -> ScalarField {
    let coords = c.coords().expect("embedded fixture");
    ScalarField::new(coords.iter().map(|p| p[axis]).collect()).unwrap()
}

/// Height along `axis` plus small multiples of the other two coordinates.
fn tilted_height(c: &SimplicialComplex, axis: usize) -> ScalarField {
    let coords = c.coords().expect("embedded fixture");
    let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
    ScalarField::new(
        coords
            .iter()
            .map(|p| p[axis] + 0.013 * p[a] + 0.0007 * p[b])
            .collect(),
    )
    .unwrap()
}

fn snap(values: Vec<f64>) -> ScalarField {
    ScalarField::new(values).unwrap().snapped(FIELD_QUANTUM)
}

/// Removes float noise so coordinate-axis points have exact zeros.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-14 {
        0.0
    } else {
        x
    }
}

fn at_least(n: f64, min: usize) -> usize {
    (n.ceil() as usize).max(min)
}

fn even(n: usize) -> usize {
    n + n % 2
}

/// Seeded random field: a sum of six sinusoids with frequencies up to 3
/// in each coordinate, or uniform values without coordinates.
pub fn random_smooth_field(complex: &SimplicialComplex, seed: u64) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = match complex.coords() {
        Some(coords) => {
            let terms: Vec<([f64; 3], f64, f64)> = (0..6)
                .map(|_| {
                    let w = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
                    (w, rng.gen_range(0.0..TAU), rng.gen_range(0.2..1.0))
                })
                .collect();
            coords
                .iter()
                .map(|p| {
                    terms
                        .iter()
                        .map(|(w, phase, amp)| amp * (w[0] * p[0] + w[1] * p[1] + w[2] * p[2] + phase).sin())
                        .sum()
                })
                .collect()
        }
        None => (0..complex.n_vertices()).map(|_| rng.gen::<f64>()).collect(),
    };
    ScalarField::new(values).unwrap()
}

/// I.i.d. uniform vertex values in [0, 1).
pub fn random_field(n_vertices: usize, seed: u64) -> ScalarField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ScalarField::new((0..n_vertices).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

fn path(h: f64) -> Result<Generated, GeneratorError> {
    let n = at_least(1.0 / h, 1);
    let coords = (0..=n).map(|i| [i as f64 / n as f64, 0.0, 0.0]).collect();
    let mut b = ComplexBuilder::with_coords(coords);
    for i in 0..n {
        b.edge(i, i + 1);
    }
    let c = b.build()?;
    let f = coordinate(&c, 0);
    Ok((c, Some(f.clone()), Some(f)))
}

fn unit_polygon(n: usize) -> Vec<[f64; 3]> {
    (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            [clean(t.cos()), clean(t.sin()), 0.0]
        })
        .collect()
}

fn circle(h: f64) -> Result<Generated, GeneratorError> {
    let n = even(at_least(TAU / h, 4));
    let mut b = ComplexBuilder::with_coords(unit_polygon(n));
    for i in 0..n {
        b.edge(i, (i + 1) % n);
    }
    let c = b.build()?;
    let f = ScalarField::new(graph_geodesic(&c, 0)).unwrap();
    let height = tilted_height(&c, 0);
    Ok((c, Some(f), Some(height)))
}

/// Vertex 0 is the center; the circle starts at vertex 1 = (1, 0).
fn theta(h: f64) -> Result<Generated, GeneratorError> {
    let n = even(at_least(TAU / h, 4));
    let k = at_least(1.0 / h, 2);
    let mut coords = vec![[0.0; 3]];
    coords.extend(unit_polygon(n));
    for i in 1..k {
        coords.push([i as f64 / k as f64, 0.0, 0.0]);
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for i in 0..n {
        b.edge(1 + i, 1 + (i + 1) % n);
    }
    let spoke: Vec<usize> = std::iter::once(0).chain(n + 1..n + k).chain(std::iter::once(1)).collect();
    for w in spoke.windows(2) {
        b.edge(w[0], w[1]);
    }
    let c = b.build()?;
    // Euclidean distance from the center: exactly 1 on the whole circle.
    let coords = c.coords().unwrap();
    let f = snap(coords.iter().map(|p| (p[0] * p[0] + p[1] * p[1]).sqrt()).collect());
    Ok((c, Some(f), None))
}

/// Junctions at (±1, 0) are vertices 0 and n/2.
fn theta_graph(h: f64) -> Result<Generated, GeneratorError> {
    let n = even(at_least(TAU / h, 4));
    let k = at_least(2.0 / h, 2);
    let mut coords = unit_polygon(n);
    for i in 1..k {
        coords.push([1.0 - 2.0 * i as f64 / k as f64, 0.0, 0.0]);
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for i in 0..n {
        b.edge(i, (i + 1) % n);
    }
    let chord: Vec<usize> = std::iter::once(0).chain(n..n + k - 1).chain(std::iter::once(n / 2)).collect();
    for w in chord.windows(2) {
        b.edge(w[0], w[1]);
    }
    let c = b.build()?;
    let f = ScalarField::new(graph_geodesic(&c, 0)).unwrap();
    let height = tilted_height(&c, 0);
    Ok((c, Some(f), Some(height)))
}

/// The junction is vertex 0.
fn wedge(r: usize, h: f64) -> Result<Generated, GeneratorError> {
    if r == 0 {
        return Err(GeneratorError::BadParameter {
            name: "wedge",
            reason: "needs at least one circle".into(),
        });
    }
    let n = at_least(PI / h, 3);
    let mut coords = vec![[0.0; 3]];
    let mut petals = Vec::with_capacity(r);
    for k in 0..r {
        let dir = TAU * k as f64 / r as f64;
        let center = [0.5 * dir.cos(), 0.5 * dir.sin()];
        let mut ids = vec![0];
        for i in 1..n {
            let t = dir + PI + TAU * i as f64 / n as f64;
            ids.push(coords.len());
            coords.push([clean(center[0] + 0.5 * t.cos()), clean(center[1] + 0.5 * t.sin()), 0.0]);
        }
        petals.push(ids);
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for ids in &petals {
        for i in 0..n {
            b.edge(ids[i], ids[(i + 1) % n]);
        }
    }
    let c = b.build()?;
    let f = ScalarField::new(graph_geodesic(&c, 0)).unwrap();
    let height = tilted_height(&c, 0);
    Ok((c, Some(f), Some(height)))
}

/// Triangulates the band between two closed rings, sweeping both by angle.
/// Ring vertex `i` of a ring of size `m` sits at angle `2πi/m`; angles are
/// compared exactly as fractions.
fn zip_rings(b: &mut ComplexBuilder, lower: &[usize], upper: &[usize]) {
    let (ma, mb) = (lower.len(), upper.len());
    if ma == 1 || mb == 1 {
        let (c, ring) = if ma == 1 { (lower[0], upper) } else { (upper[0], lower) };
        for j in 0..ring.len() {
            b.triangle(c, ring[j], ring[(j + 1) % ring.len()]);
        }
        return;
    }
    let (mut i, mut j) = (0, 0);
    while i < ma || j < mb {
        let advance_lower = j == mb || (i < ma && (i + 1) * mb <= (j + 1) * ma);
        if advance_lower {
            b.triangle(lower[i % ma], lower[(i + 1) % ma], upper[j % mb]);
            i += 1;
        } else {
            b.triangle(lower[i % ma], upper[j % mb], upper[(j + 1) % mb]);
            j += 1;
        }
    }
}

/// Concentric rings of `6k` vertices at radius `k/m`; `m` is even so the
/// boundary contains the four axis points.
fn disk(h: f64) -> Result<SimplicialComplex, GeneratorError> {
    let m = even(at_least(1.0 / h, 2));
    let mut coords = vec![[0.0; 3]];
    let mut rings = vec![vec![0usize]];
    for k in 1..=m {
        let r = k as f64 / m as f64;
        let size = 6 * k;
        let ids: Vec<usize> = (coords.len()..coords.len() + size).collect();
        for i in 0..size {
            let t = TAU * i as f64 / size as f64;
            coords.push([clean(r * t.cos()), clean(r * t.sin()), 0.0]);
        }
        rings.push(ids);
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for w in rings.windows(2) {
        zip_rings(&mut b, &w[0], &w[1]);
    }
    Ok(b.build()?)
}

fn sphere_point(theta: f64, phi: f64) -> [f64; 3] {
    [
        clean(theta.sin() * phi.cos()),
        clean(theta.sin() * phi.sin()),
        clean(theta.cos()),
    ]
}

/// Latitude ring sizes for a sphere with `n_lat` bands; sizes are multiples
/// of 6 and the equator's of 12.
fn ring_sizes(n_lat: usize, h: f64) -> Vec<usize> {
    (1..n_lat)
        .map(|k| {
            let theta = PI * k as f64 / n_lat as f64;
            let unit = if 2 * k == n_lat { 12 } else { 6 };
            unit * at_least(TAU * theta.sin() / (unit as f64 * h), 1)
        })
        .collect()
}

/// North pole is vertex 0. With `hemisphere`, rings stop at the equator.
fn uv_sphere(h: f64, hemisphere: bool) -> Result<SimplicialComplex, GeneratorError> {
    Ok(uv_sphere_with_angles(h, hemisphere)?.0)
}

/// Ring index, position in the ring and ring size of each vertex.
type RingVertex = (usize, usize, usize);

fn uv_sphere_with_angles(
    h: f64,
    hemisphere: bool,
) -> Result<(SimplicialComplex, Vec<RingVertex>, usize), GeneratorError> {
    let n_lat = even(at_least(PI / h, 2));
    let sizes = ring_sizes(n_lat, h);
    let last = if hemisphere { n_lat / 2 } else { n_lat - 1 };
    let mut coords = vec![[0.0, 0.0, 1.0]];
    // (ring k, index i, ring size) per vertex; the pole is ring 0.
    let mut angles = vec![(0usize, 0usize, 1usize)];
    let mut rings = vec![vec![0usize]];
    for k in 1..=last {
        let size = sizes[k - 1];
        let theta = PI * k as f64 / n_lat as f64;
        let ids: Vec<usize> = (coords.len()..coords.len() + size).collect();
        for i in 0..size {
            coords.push(sphere_point(theta, TAU * i as f64 / size as f64));
            angles.push((k, i, size));
        }
        rings.push(ids);
    }
    if !hemisphere {
        rings.push(vec![coords.len()]);
        coords.push([0.0, 0.0, -1.0]);
        angles.push((n_lat, 0, 1));
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for w in rings.windows(2) {
        zip_rings(&mut b, &w[0], &w[1]);
    }
    Ok((b.build()?, angles, n_lat))
}

/// Canonical field: distance to the tripod of three meridian arcs at
/// azimuths 0, 2π/3, 4π/3. Height field: polar distance from the pole.
fn hemisphere(h: f64) -> Result<Generated, GeneratorError> {
    let (c, angles, n_lat) = uv_sphere_with_angles(h, true)?;
    let tripod: Vec<f64> = angles
        .iter()
        .map(|&(k, i, m)| {
            let theta = PI * k as f64 / n_lat as f64;
            if k == 0 {
                return 0.0;
            }
            (0..3)
                .map(|q| {
                    // azimuth difference 2π(3i − qm)/(3m), computed exactly
                    let num = 3 * i as i64 - (q * m) as i64;
                    let dphi = TAU * num as f64 / (3 * m) as f64;
                    if num == 0 {
                        0.0
                    } else if dphi.cos() >= 0.0 {
                        (theta.sin() * dphi.sin().abs()).min(1.0).asin()
                    } else {
                        theta
                    }
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let polar: Vec<f64> = angles
        .iter()
        .map(|&(k, _, _)| PI * k as f64 / n_lat as f64)
        .collect();
    Ok((c, Some(snap(tripod)), Some(snap(polar))))
}

fn torus(h: f64) -> Result<SimplicialComplex, GeneratorError> {
    let (big, small) = (1.0, 0.4);
    let nu = at_least(TAU * (big + small) / h, 3);
    let nv = at_least(TAU * small / h, 3);
    let id = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut coords = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = TAU * i as f64 / nu as f64;
        for j in 0..nv {
            let v = TAU * j as f64 / nv as f64;
            let rho = big + small * v.cos();
            coords.push([clean(rho * u.cos()), clean(rho * u.sin()), clean(small * v.sin())]);
        }
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for i in 0..nu {
        for j in 0..nv {
            b.triangle(id(i, j), id(i + 1, j), id(i + 1, j + 1));
            b.triangle(id(i, j), id(i + 1, j + 1), id(i, j + 1));
        }
    }
    Ok(b.build()?)
}

/// `n × n` grid on the unit square with periodic identification; `n` even,
/// so (½, 0), (0, ½) and (½, ½) are vertices. Vertex `(i, j)` has id
/// `i·n + j`. Canonical field: flat distance from vertex 0.
fn flat_torus(h: f64) -> Result<Generated, GeneratorError> {
    let n = even(at_least(1.0 / h, 4));
    let s = 1.0 / n as f64;
    let id = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut b = ComplexBuilder::new(n * n);
    for i in 0..n {
        for j in 0..n {
            b.edge_with_length(id(i, j), id(i + 1, j), s);
            b.edge_with_length(id(i, j), id(i, j + 1), s);
            b.edge_with_length(id(i + 1, j), id(i, j + 1), s * 2f64.sqrt());
        }
    }
    for i in 0..n {
        for j in 0..n {
            b.triangle(id(i, j), id(i + 1, j), id(i, j + 1));
            b.triangle(id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
        }
    }
    let c = b.build()?;
    let wrap = |k: usize| (k.min(n - k)) as f64 * s;
    let dist: Vec<f64> = (0..n * n)
        .map(|v| {
            let (dx, dy) = (wrap(v / n), wrap(v % n));
            (dx * dx + dy * dy).sqrt()
        })
        .collect();
    // height: a generic combination of the two periodic coordinates
    let height: Vec<f64> = (0..n * n)
        .map(|v| {
            let (x, y) = ((v / n) as f64 * s, (v % n) as f64 * s);
            (TAU * x).cos() + 0.013 * (TAU * y).cos()
        })
        .collect();
    Ok((c, Some(snap(dist)), Some(ScalarField::new(height).unwrap())))
}

/// Plate `[0, 1.5g + 0.5] × [0, 1.5]` with square holes
/// `[0.5 + 1.5k, 1 + 1.5k] × [0.5, 1]`, tiled by squares of side `0.5/m`
/// each split into four triangles around a center vertex. The top and
/// bottom copies (`z = ±φ`, φ the distance to the plate boundary) share the
/// boundary vertices, which gives a closed surface of genus `g`.
fn genus_surface(g: usize, h: f64) -> Result<SimplicialComplex, GeneratorError> {
    let m = at_least(0.5 / h, 2);
    let s = 0.5 / m as f64;
    let (nx, ny) = ((3 * g + 1) * m, 3 * m);
    let (width, height) = (nx as f64 * s, ny as f64 * s);
    // cell (i, j) lies in a hole iff its block coordinates do
    let in_hole = |i: usize, j: usize| {
        let (bi, bj) = (i / m, j / m);
        bj == 1 && bi % 3 == 1 && bi < 3 * g
    };
    let in_domain = |i: usize, j: usize| i < nx && j < ny && !in_hole(i, j);
    let corner_used = |i: usize, j: usize| {
        let cells = [(i.wrapping_sub(1), j.wrapping_sub(1)), (i, j.wrapping_sub(1)), (i.wrapping_sub(1), j), (i, j)];
        cells.iter().filter(|&&(a, b)| in_domain(a, b)).count()
    };
    let phi = |x: f64, y: f64| -> f64 {
        let mut d = x.min(width - x).min(y).min(height - y);
        for k in 0..g {
            let (x0, x1) = (0.5 + 1.5 * k as f64, 1.0 + 1.5 * k as f64);
            let dx = (x0 - x).max(0.0).max(x - x1);
            let dy = (0.5 - y).max(0.0).max(y - 1.0);
            d = d.min((dx * dx + dy * dy).sqrt());
        }
        d.max(0.0)
    };

    let mut coords: Vec<[f64; 3]> = Vec::new();
    // corner ids: [top, bottom]; boundary corners share one id
    let mut corner = vec![[usize::MAX; 2]; (nx + 1) * (ny + 1)];
    for i in 0..=nx {
        for j in 0..=ny {
            let used = corner_used(i, j);
            if used == 0 {
                continue;
            }
            let (x, y) = (i as f64 * s, j as f64 * s);
            let slot = &mut corner[i * (ny + 1) + j];
            if used < 4 {
                slot[0] = coords.len();
                slot[1] = coords.len();
                coords.push([x, y, 0.0]);
            } else {
                let z = phi(x, y);
                slot[0] = coords.len();
                coords.push([x, y, z]);
                slot[1] = coords.len();
                coords.push([x, y, -z]);
            }
        }
    }
    let mut triangles = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            if !in_domain(i, j) {
                continue;
            }
            let (x, y) = ((i as f64 + 0.5) * s, (j as f64 + 0.5) * s);
            let z = phi(x, y);
            for side in 0..2 {
                let center = coords.len();
                coords.push([x, y, if side == 0 { z } else { -z }]);
                let c = |a: usize, b: usize| corner[a * (ny + 1) + b][side];
                let ring = [c(i, j), c(i + 1, j), c(i + 1, j + 1), c(i, j + 1)];
                for k in 0..4 {
                    triangles.push([center, ring[k], ring[(k + 1) % 4]]);
                }
            }
        }
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for [a, bb, c] in triangles {
        b.triangle(a, bb, c);
    }
    Ok(b.build()?)
}
