use crate::approx::LevelSampling;
use crate::complex::{
    map_levels, random_smooth_field, AmbientMetric, ContourPoint, FieldKind, Fixture, ScalarField,
    SimplicialComplex, SphereGeodesic, FIELD_QUANTUM,
};
use crate::exec::Exec;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A named member of a function suite.
#[derive(Clone, Debug)]
pub struct SuiteField {
    pub name: String,
    pub field: ScalarField,
}

impl SuiteField {
    fn new(name: impl Into<String>, field: ScalarField) -> Self {
        SuiteField {
            name: name.into(),
            field: field.snapped(FIELD_QUANTUM),
        }
    }
}

fn from_coords(complex: &SimplicialComplex, f: impl Fn([f64; 3]) -> f64) -> ScalarField {
    let coords = complex.coords().expect("suite fields need coordinates");
    ScalarField::new(coords.iter().map(|&p| f(p)).collect()).expect("finite coordinates")
}

/// Linear, radial, `|x₁|+|x₂|`, saddle and eight seeded random smooth
/// fields on an embedded disk.
pub fn disk_suite(complex: &SimplicialComplex, seed: u64) -> Vec<SuiteField> {
    let mut suite = vec![
        SuiteField::new("linear", from_coords(complex, |p| p[0])),
        SuiteField::new("radial", from_coords(complex, |p| (p[0] * p[0] + p[1] * p[1]).sqrt())),
        SuiteField::new("l1", from_coords(complex, |p| p[0].abs() + p[1].abs())),
        SuiteField::new("saddle", from_coords(complex, |p| p[0] * p[0] - p[1] * p[1])),
    ];
    for i in 0..8 {
        let s = seed.wrapping_add(i);
        suite.push(SuiteField::new(format!("random_{i}"), random_smooth_field(complex, s)));
    }
    suite
}

/// Tripod distance, polar distance and ten seeded random smooth fields on
/// the hemisphere fixture.
pub fn hemisphere_suite(fixture: &Fixture, seed: u64) -> Vec<SuiteField> {
    let mut suite = vec![
        SuiteField::new("tripod", fixture.field_of(FieldKind::Canonical)),
        SuiteField::new("height", fixture.field_of(FieldKind::Height)),
    ];
    for i in 0..10 {
        let s = seed.wrapping_add(i);
        suite.push(SuiteField::new(format!("random_{i}"), fixture.field_of(FieldKind::RandomSmooth(s))));
    }
    suite
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskReport {
    pub field: String,
    /// Level of the contour whose boundary points are farthest apart.
    pub best_level: f64,
    /// Largest extrinsic diameter of `C ∩ ∂E` over sampled contours `C`.
    pub boundary_diameter: f64,
    pub interior_level: f64,
    /// Largest extrinsic diameter of a whole sampled contour.
    pub interior_diameter: f64,
    pub tolerance: f64,
    /// `boundary_diameter ≥ √3 − tolerance`.
    pub pass: bool,
}

fn planar(complex: &SimplicialComplex, points: &[ContourPoint]) -> Vec<[f64; 2]> {
    points
        .iter()
        .map(|p| {
            let x = p.position(complex).expect("disk fixture has coordinates");
            [x[0], x[1]]
        })
        .collect()
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn brute_diameter(pts: &[[f64; 2]]) -> f64 {
    let mut best = 0.0f64;
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            best = best.max(dist2(a, b));
        }
    }
    best
}

/// Monotone-chain convex hull; collinear points dropped.
fn hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut out: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = out.len();
        let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while out.len() >= start + 2 && cross(out[out.len() - 2], out[out.len() - 1], p) <= 0.0 {
                out.pop();
            }
            out.push(p);
        }
        out.pop();
    }
    out
}

/// Searches every sampled level and component of `field` on a planar disk
/// mesh for the contour whose boundary crossings are farthest apart.
pub fn disk_contour_verify(
    complex: &SimplicialComplex,
    field: &ScalarField,
    name: &str,
    sampling: LevelSampling,
    tol: f64,
    exec: Exec,
) -> DiskReport {
    let levels = sampling.levels(field);
    let per_level = map_levels(complex, field, &levels, exec, |y, contours| {
        let mut boundary = 0.0f64;
        let mut interior = 0.0f64;
        for c in contours {
            boundary = boundary.max(brute_diameter(&planar(complex, &c.boundary_points(complex))));
            interior = interior.max(brute_diameter(&hull(planar(complex, &c.points))));
        }
        (y, boundary, interior)
    });
    let mut report = DiskReport {
        field: name.to_string(),
        best_level: f64::NAN,
        boundary_diameter: 0.0,
        interior_level: f64::NAN,
        interior_diameter: 0.0,
        tolerance: tol,
        pass: false,
    };
    for (y, b, i) in per_level {
        if b > report.boundary_diameter || report.best_level.is_nan() {
            report.boundary_diameter = b;
            report.best_level = y;
        }
        if i > report.interior_diameter || report.interior_level.is_nan() {
            report.interior_diameter = i;
            report.interior_level = y;
        }
    }
    report.pass = report.boundary_diameter >= 3f64.sqrt() - tol;
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldWidth {
    pub field: String,
    /// Largest intrinsic diameter over sampled contours.
    pub max_diameter: f64,
    pub level: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HemisphereReport {
    pub fields: Vec<FieldWidth>,
    /// Upper estimate of the Reeb width from this suite.
    pub suite_min: f64,
    /// Max-contour diameter of the tripod field, if it is in the suite.
    pub tripod: Option<f64>,
    pub target: f64,
    /// Relative tolerance.
    pub tolerance: f64,
    pub pass: bool,
}

/// Max-contour intrinsic diameter of each suite field on the unit
/// hemisphere, measured along great circles.
///
/// Passes when every field reaches `(2π/3)(1 − tol)` and the tripod field
/// (named `"tripod"`) is within `tol` of `2π/3` relative.
pub fn hemisphere_width_verify(
    complex: &SimplicialComplex,
    suite: &[SuiteField],
    sampling: LevelSampling,
    tol: f64,
    exec: Exec,
) -> HemisphereReport {
    let metric = SphereGeodesic::unit();
    let target = 2.0 * PI / 3.0;
    let fields: Vec<FieldWidth> = exec.map(suite, |sf| {
        let levels = sampling.levels(&sf.field);
        let per_level = map_levels(complex, &sf.field, &levels, exec, |y, contours| {
            let d = contours
                .iter()
                .map(|c| metric.diameter(complex, &c.points))
                .fold(0.0, f64::max);
            (y, d)
        });
        let mut best = FieldWidth {
            field: sf.name.clone(),
            max_diameter: 0.0,
            level: f64::NAN,
        };
        for (y, d) in per_level {
            if d > best.max_diameter || best.level.is_nan() {
                best.max_diameter = d;
                best.level = y;
            }
        }
        best
    });
    let suite_min = fields.iter().map(|f| f.max_diameter).fold(f64::INFINITY, f64::min);
    let tripod = fields.iter().find(|f| f.field == "tripod").map(|f| f.max_diameter);
    let floor = target * (1.0 - tol);
    let pass = !fields.is_empty()
        && fields.iter().all(|f| f.max_diameter >= floor)
        && tripod.is_none_or(|d| (d - target).abs() <= tol * target);
    HemisphereReport {
        fields,
        suite_min,
        tripod,
        target,
        tolerance: tol,
        pass,
    }
}
