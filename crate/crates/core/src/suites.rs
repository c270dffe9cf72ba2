//! Verification suites over generated fixtures. Each suite returns its
//! reports sorted by fixture name, then by report name.

use crate::algebra::{self, chain_check, evaluate, parse, AlgebraError, BaseSpace, Count, InvariantRecord, SpaceExpr};
use crate::approx::{
    distance_function_bound, distortion_from_matrix, max_contour_diameter, thickness, ApproxError, BoundReport,
    LevelSampling, Pairs,
};
use crate::complex::{
    generate_space, DistanceMatrix, Euclidean, FieldKind, Fixture, Generator, GeneratorError, SpaceSpec,
};
use crate::exec::Exec;
use crate::reeb::{build_reeb, ReebError};
use crate::width::{
    disk_contour_verify, disk_suite, hemisphere_suite, hemisphere_width_verify, reeb_width_local, LocalGeometry,
    WidthError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of thm31, thm52, thm62, ex66, chain, rules, thickness)")]
    Unknown(String),
    #[error("invalid setting: {0}")]
    Setting(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Reeb(#[from] ReebError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Width(#[from] WidthError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Cycle rank against corank and first Betti number, with the
    /// tightness and flat-torus examples.
    Thm31,
    /// Distortion of distance-field quotient maps against `2(b₁'+1)D`.
    Thm52,
    /// Disk contours with boundary points at least `√3` apart.
    Thm62,
    /// Hemisphere contour widths against `2π/3`.
    Ex66,
    /// `b₁' ≤ h ≤ b₁` over the reference table.
    Chain,
    /// Composition rules against reference-table values.
    Rules,
    /// Surface fields have thickness at least 1.
    Thickness,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Thm31,
        Suite::Thm52,
        Suite::Thm62,
        Suite::Ex66,
        Suite::Chain,
        Suite::Rules,
        Suite::Thickness,
    ];

    pub fn default_h(self) -> f64 {
        match self {
            Suite::Thm31 | Suite::Thickness => 0.05,
            Suite::Thm52 => 0.15,
            Suite::Thm62 | Suite::Ex66 => 0.02,
            Suite::Chain | Suite::Rules => 0.0,
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Thm62 => 0.05,
            Suite::Ex66 => 0.03,
            _ => 0.0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Thm31 => "thm31",
            Suite::Thm52 => "thm52",
            Suite::Thm62 => "thm62",
            Suite::Ex66 => "ex66",
            Suite::Chain => "chain",
            Suite::Rules => "rules",
            Suite::Thickness => "thickness",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| SuiteError::Unknown(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SuiteConfig {
    /// Mesh resolution; the suite default when `None`.
    pub h: Option<f64>,
    pub seed: u64,
    /// Tolerance override; the suite default when `None`.
    pub tol: Option<f64>,
    pub exec: Exec,
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<BoundReport>, SuiteError> {
    let h = cfg.h.unwrap_or(suite.default_h());
    let tol = cfg.tol.unwrap_or(suite.default_tol());
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(SuiteError::Setting(format!("tolerance must be nonnegative, got {tol}")));
    }
    let mut reports = match suite {
        Suite::Thm31 => thm31(h, cfg.seed, cfg.exec)?,
        Suite::Thm52 => thm52(h, cfg.seed, cfg.exec)?,
        Suite::Thm62 => thm62(h, cfg.seed, tol, cfg.exec)?,
        Suite::Ex66 => ex66(h, cfg.seed, tol, cfg.exec)?,
        Suite::Chain => chain()?,
        Suite::Rules => rules()?,
        Suite::Thickness => thickness_suite(h, cfg.seed, cfg.exec)?,
    };
    reports.sort_by(|a, b| a.fixture.cmp(&b.fixture).then_with(|| a.name.cmp(&b.name)));
    Ok(reports)
}

fn fixtures(gens: &[Generator], h: f64, exec: Exec) -> Result<Vec<Fixture>, SuiteError> {
    exec.map(gens, |&g| generate_space(&SpaceSpec::new(g, h)))
        .into_iter()
        .map(|r| r.map_err(SuiteError::from))
        .collect()
}

/// `count` distinct source vertices, drawn from a stream keyed by the
/// seed and the fixture name.
fn sources(fx: &Fixture, seed: u64, count: usize) -> Vec<usize> {
    let key = fx.name.bytes().fold(seed, |k, b| k.wrapping_mul(1_099_511_628_211).wrapping_add(u64::from(b)));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    let n = fx.complex.n_vertices();
    let mut out = Vec::with_capacity(count);
    while out.len() < count.min(n) {
        let v = rng.gen_range(0..n);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

fn corank(g: Generator) -> (usize, usize) {
    g.corank_and_b1().expect("suite fixtures are tabulated")
}

fn thm31(h: f64, seed: u64, exec: Exec) -> Result<Vec<BoundReport>, SuiteError> {
    let gens = [
        Generator::Sphere,
        Generator::Torus,
        Generator::Genus(2),
        Generator::Genus(3),
        Generator::Theta,
        Generator::Wedge(3),
    ];
    let fxs = fixtures(&gens, h, exec)?;
    let per_fixture = exec.map(&fxs, |fx| -> Result<Vec<BoundReport>, SuiteError> {
        let (b1p, b1) = corank(fx.generator);
        let mut kinds = vec![("height".to_string(), FieldKind::Height)];
        for v in sources(fx, seed, 5) {
            kinds.push((format!("dist(v={v})"), FieldKind::Distance(v)));
        }
        let mut out = Vec::new();
        for (label, kind) in kinds {
            let (g, _) = build_reeb(&fx.complex, &fx.field_of(kind))?;
            let cr = g.cycle_rank() as f64;
            let name = format!("{}/{label}", fx.name);
            out.push(BoundReport::new("corank.cycle_rank", &name, "cycle_rank(R_f) <= b1'(X)", cr, b1p as f64, 0.0));
            out.push(BoundReport::new("betti.cycle_rank", &name, "cycle_rank(R_f) <= b1(X)", cr, b1 as f64, 0.0));
        }
        Ok(out)
    });
    let mut reports: Vec<BoundReport> = per_fixture.into_iter().collect::<Result<Vec<_>, _>>()?.concat();

    let tight = [Generator::Genus(1), Generator::Genus(2), Generator::Genus(3)];
    for fx in fixtures(&tight, h, exec)? {
        let (g, _) = build_reeb(&fx.complex, &fx.field_of(FieldKind::Height))?;
        let (b1p, _) = corank(fx.generator);
        reports.push(
            BoundReport::close("corank.tight", format!("{}/height", fx.name), g.cycle_rank() as f64, b1p as f64, 0.0)
                .with_input("h", h),
        );
    }
    for (gen, label) in [(Generator::FlatTorus, "flat_torus.distance"), (Generator::Theta, "theta.distance")] {
        let fx = generate_space(&SpaceSpec::new(gen, h))?;
        let (g, _) = build_reeb(&fx.complex, &fx.field_of(FieldKind::Canonical))?;
        reports.push(BoundReport::close(label, format!("{}/canonical", fx.name), g.cycle_rank() as f64, 0.0, 0.0));
    }
    Ok(reports)
}

/// Absolute slack for float rounding in distances that are exactly equal
/// in exact arithmetic (1-complexes, where `D = 0` and `dis = 0`).
const ROUNDING: f64 = 1e-12;

fn thm52(h: f64, seed: u64, exec: Exec) -> Result<Vec<BoundReport>, SuiteError> {
    let gens = [Generator::Torus, Generator::Genus(2), Generator::Sphere, Generator::Theta];
    let sampling = LevelSampling::Gaps {
        per_gap: 1,
        vertex_levels: true,
    };
    let mut reports = Vec::new();
    for fx in fixtures(&gens, h, exec)? {
        let (b1p, _) = corank(fx.generator);
        let matrix = DistanceMatrix::all_pairs(&fx.complex, exec);
        let h_mesh = fx.complex.max_edge_length();
        for v in sources(&fx, seed, 5) {
            let field = fx.field_of(FieldKind::Distance(v));
            let (g, map) = build_reeb(&fx.complex, &field)?;
            let dis = distortion_from_matrix(&fx.complex, &matrix, &g, &map, Pairs::All, exec)?;
            let d = max_contour_diameter(&fx.complex, &field, sampling, &matrix, exec)?;
            let bound = distance_function_bound(b1p, d.value)?.distortion;
            reports.push(
                BoundReport::new(
                    "distortion.bound",
                    format!("{}/dist(v={v})", fx.name),
                    "dis(phi) <= 2(b1'+1) D (1 + 10h) + 1e-12",
                    dis.value,
                    bound * (1.0 + 10.0 * h_mesh) + ROUNDING,
                    0.0,
                )
                .with_input("b1_prime", b1p)
                .with_input("D", d.value)
                .with_input("h", h_mesh),
            );
        }
    }
    for (fixture, b1p, factor) in [("closed-form/torus", 1usize, 4.0), ("closed-form/genus:2", 2, 6.0)] {
        let got = distance_function_bound(b1p, 1.0)?.distortion;
        reports.push(BoundReport::close("distortion.constant", fixture, got, factor, 0.0));
    }
    Ok(reports)
}

fn thm62(h: f64, seed: u64, tol: f64, exec: Exec) -> Result<Vec<BoundReport>, SuiteError> {
    let fx = generate_space(&SpaceSpec::new(Generator::Disk, h))?;
    let sampling = LevelSampling::Gaps {
        per_gap: 1,
        vertex_levels: true,
    };
    let suite = disk_suite(&fx.complex, seed);
    let results = exec.map(&suite, |sf| disk_contour_verify(&fx.complex, &sf.field, &sf.name, sampling, tol, exec));
    Ok(results
        .into_iter()
        .map(|r| {
            BoundReport::new(
                "disk.boundary",
                format!("disk/{}", r.field),
                "sqrt(3) - tol <= diam(C cap boundary)",
                3f64.sqrt() - tol,
                r.boundary_diameter,
                0.0,
            )
            .with_input("best_level", r.best_level)
            .with_input("interior_diameter", r.interior_diameter)
            .with_input("interior_level", r.interior_level)
            .with_input("tol", tol)
        })
        .collect())
}

/// Uniform levels per hemisphere field.
pub const HEMISPHERE_LEVELS: usize = 400;

fn ex66(h: f64, seed: u64, tol: f64, exec: Exec) -> Result<Vec<BoundReport>, SuiteError> {
    let fx = generate_space(&SpaceSpec::new(Generator::Hemisphere, h))?;
    let suite = hemisphere_suite(&fx, seed);
    let sampling = LevelSampling::Uniform {
        count: HEMISPHERE_LEVELS,
    };
    let r = hemisphere_width_verify(&fx.complex, &suite, sampling, tol, exec);
    let mut reports: Vec<BoundReport> = r
        .fields
        .iter()
        .map(|f| {
            BoundReport::new(
                "hemisphere.width",
                format!("hemisphere/{}", f.field),
                "(2pi/3)(1 - tol) <= max contour diam",
                r.target * (1.0 - tol),
                f.max_diameter,
                0.0,
            )
            .with_input("level", f.level)
        })
        .collect();
    if let Some(d) = r.tripod {
        reports.push(
            BoundReport::close("hemisphere.tripod", "hemisphere/tripod", d, r.target, tol * r.target)
                .with_input("suite_min", r.suite_min),
        );
    }
    let local = reeb_width_local(&LocalGeometry {
        r: PI / 2.0,
        curvature: 1.0,
        dim: 2,
    })?;
    reports.push(BoundReport::close("hemisphere.local", "closed-form/hemisphere", local, r.target, 1e-12));
    Ok(reports)
}

/// Every reference-table entry with parameters up to 10 (bordered
/// surfaces up to 3 boundary circles).
pub fn table_entries() -> Vec<BaseSpace> {
    let mut out = vec![BaseSpace::Point, BaseSpace::Circle, BaseSpace::ProjectivePlane];
    for n in 1..=10 {
        out.push(BaseSpace::Sphere(n));
        out.push(BaseSpace::Torus(n));
        out.push(BaseSpace::Bouquet(n));
        out.push(BaseSpace::Orientable { genus: n, boundary: 0 });
        out.push(BaseSpace::Nonorientable { genus: n, boundary: 0 });
        for b in 1..=3 {
            out.push(BaseSpace::Orientable { genus: n, boundary: b });
            out.push(BaseSpace::Nonorientable { genus: n, boundary: b });
        }
    }
    out
}

fn chain() -> Result<Vec<BoundReport>, SuiteError> {
    table_entries()
        .into_iter()
        .map(|b| Ok(chain_check(&b.to_string(), &b.record()?)?))
        .collect()
}

fn count_value(c: Count) -> f64 {
    match c {
        Count::Known(n) => n as f64,
        Count::Infinite => f64::INFINITY,
        Count::Unknown => f64::NAN,
    }
}

/// Agreement of every field of two records; unknown fields agree only
/// with unknown fields.
fn same_record(name: &str, fixture: &str, got: &InvariantRecord, want: &InvariantRecord) -> Vec<BoundReport> {
    let fields = [
        ("b1", got.b1, want.b1),
        ("b1_prime", got.b1_prime, want.b1_prime),
        ("h", got.h, want.h),
        ("b2", got.b2, want.b2),
        ("k", got.k, want.k),
    ];
    fields
        .into_iter()
        .map(|(field, g, w)| {
            let (a, b) = (count_value(g), count_value(w));
            let lhs = if g == w { 0.0 } else if a.is_nan() || b.is_nan() { f64::INFINITY } else { (a - b).abs() };
            BoundReport::new(format!("{name}.{field}"), fixture, "|got - want| <= 0", lhs, 0.0, 0.0)
                .with_input("got", g.to_string())
                .with_input("want", w.to_string())
        })
        .collect()
}

fn eval_str(s: &str) -> Result<InvariantRecord, SuiteError> {
    Ok(evaluate(&parse(s)?)?)
}

fn rules() -> Result<Vec<BoundReport>, SuiteError> {
    let mut reports = Vec::new();
    for (a, b) in [(1u32, 1u32), (1, 2), (2, 3), (3, 4)] {
        let expr = format!("product(torus({a}), torus({b}))");
        let want = BaseSpace::Torus(a + b).record()?;
        reports.extend(same_record("rules.product", &expr, &eval_str(&expr)?, &want));
    }
    for (a, b) in [(1u32, 1u32), (1, 2), (2, 3)] {
        let expr = format!("connsum(surface(g={a}), surface(g={b}))");
        let want = BaseSpace::Orientable { genus: a + b, boundary: 0 }.record()?;
        reports.extend(same_record("rules.connsum", &expr, &eval_str(&expr)?, &want));
    }
    for r in 2..=5u32 {
        let expr = format!("wedge({})", vec!["circle"; r as usize].join(", "));
        let want = BaseSpace::Bouquet(r).record()?;
        let got = eval_str(&expr)?;
        for (field, g, w) in [("b1", got.b1, want.b1), ("b1_prime", got.b1_prime, want.b1_prime), ("h", got.h, want.h)] {
            reports.push(BoundReport::close(format!("rules.wedge.{field}"), &expr, count_value(g), count_value(w), 0.0));
        }
    }
    for (a, b) in [(1u32, 1u32), (1, 2), (2, 2)] {
        let expr = format!("connsum(nonorientable(g={a}), nonorientable(g={b}))");
        let got = eval_str(&expr)?;
        let want = BaseSpace::Nonorientable { genus: a + b, boundary: 0 }.record()?;
        reports.push(BoundReport::close("rules.connsum_nonorientable.b1", &expr, count_value(got.b1), count_value(want.b1), 0.0));
        let unknown = if got.b1_prime.is_unknown() { 1.0 } else { 0.0 };
        reports.push(BoundReport::close("rules.connsum_nonorientable.b1_prime_unknown", &expr, unknown, 1.0, 0.0));
    }
    let expr = "product(torus(3), surface(g=2))";
    reports.push(BoundReport::close("rules.product.b1_prime", expr, count_value(algebra::corank_eval(&parse(expr)?)?), 2.0, 0.0));
    let expr = SpaceExpr::product(SpaceExpr::base(BaseSpace::Circle), SpaceExpr::base(BaseSpace::Bouquet(2)));
    let r = evaluate(&expr)?;
    reports.push(chain_check(&expr.to_string(), &r)?);
    Ok(reports)
}

fn thickness_suite(h: f64, seed: u64, exec: Exec) -> Result<Vec<BoundReport>, SuiteError> {
    let gens = [Generator::Disk, Generator::Sphere, Generator::Hemisphere, Generator::Torus, Generator::Genus(2)];
    let sampling = LevelSampling::Gaps {
        per_gap: 1,
        vertex_levels: false,
    };
    let mut reports = Vec::new();
    for fx in fixtures(&gens, h, exec)? {
        let h_mesh = fx.complex.max_edge_length();
        let mut kinds = vec![("canonical".to_string(), FieldKind::Canonical), ("height".to_string(), FieldKind::Height)];
        for i in 0..3 {
            kinds.push((format!("random_{i}"), FieldKind::RandomSmooth(seed.wrapping_add(i))));
        }
        for (label, kind) in kinds {
            let t = thickness(&fx.complex, &fx.field_of(kind), sampling, &Euclidean, exec)?;
            reports.push(
                BoundReport::new(
                    "thickness.surface",
                    format!("{}/{label}", fx.name),
                    "1 - 4h <= T_f",
                    1.0 - 4.0 * h_mesh,
                    t.value,
                    0.0,
                )
                .with_input("h", h_mesh)
                .with_input("level", t.level)
                .with_input("contours", t.contours)
                .with_input("degenerate", t.degenerate),
            );
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: Suite, h: Option<f64>) -> Vec<BoundReport> {
        let cfg = SuiteConfig {
            h,
            ..SuiteConfig::default()
        };
        let r = run_suite(s, &cfg).unwrap();
        for x in &r {
            assert!(x.pass, "{x}");
        }
        assert!(!r.is_empty());
        r
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("thm99".parse::<Suite>().is_err());
    }

    #[test]
    fn algebraic_suites_pass() {
        run(Suite::Chain, None);
        run(Suite::Rules, None);
    }

    #[test]
    fn coarse_geometric_suites_pass() {
        run(Suite::Thm31, Some(0.3));
        run(Suite::Thm52, Some(0.3));
        run(Suite::Thickness, Some(0.2));
        run(Suite::Thm62, Some(0.1));
    }

    #[test]
    fn sorted_and_deterministic() {
        let cfg = SuiteConfig {
            h: Some(0.3),
            seed: 9,
            ..SuiteConfig::default()
        };
        let a = run_suite(Suite::Thm31, &cfg).unwrap();
        let b = run_suite(Suite::Thm31, &SuiteConfig { exec: Exec::Sequential, ..cfg }).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].fixture <= w[1].fixture));
    }
}
