//! Composition rules for b₁', h and the Betti numbers.
//!
//! A rule whose hypotheses cannot be certified from the operand flags
//! yields [`Count::Unknown`] and a note saying which hypothesis failed.

use super::expr::{Gluing, Intersection, SpaceExpr};
use super::record::{Count, InvariantRecord, SpaceFlags};
use super::AlgebraError;
use crate::approx::BoundReport;
use serde::{Deserialize, Serialize};

/// Evaluates every invariant of `e`.
pub fn evaluate(e: &SpaceExpr) -> Result<InvariantRecord, AlgebraError> {
    Ok(match e {
        SpaceExpr::Base(b) => b.record()?,
        SpaceExpr::Product(a, b) => product(evaluate(a)?, evaluate(b)?),
        SpaceExpr::Union(a, b, i) => union(evaluate(a)?, evaluate(b)?, *i),
        SpaceExpr::Wedge(a, b, g) => wedge(evaluate(a)?, evaluate(b)?, *g),
        SpaceExpr::ConnSum(a, b) => connsum(evaluate(a)?, evaluate(b)?),
    })
}

pub fn corank_eval(e: &SpaceExpr) -> Result<Count, AlgebraError> {
    Ok(evaluate(e)?.b1_prime)
}

pub fn isotropy_eval(e: &SpaceExpr) -> Result<Count, AlgebraError> {
    Ok(evaluate(e)?.h)
}

fn merged_notes(a: &InvariantRecord, b: &InvariantRecord) -> Vec<String> {
    let mut notes = a.notes.clone();
    for n in &b.notes {
        if !notes.contains(n) {
            notes.push(n.clone());
        }
    }
    notes
}

fn product(a: InvariantRecord, b: InvariantRecord) -> InvariantRecord {
    let mut notes = merged_notes(&a, &b);
    let fg = a.flags.fundamental_group_fg && b.flags.fundamental_group_fg;
    let (b1_prime, h) = if fg {
        (a.b1_prime.max(b.b1_prime), a.h.max(b.h))
    } else {
        notes.push("product: needs finitely generated fundamental groups".into());
        (Count::Unknown, Count::Unknown)
    };
    // Künneth: H¹ ⊗ H¹ embeds in H², so a class with a nonzero component
    // in each factor pairs nontrivially; a factor with b1 = 0 adds nothing.
    let k = match (a.b1, b.b1) {
        (Count::Known(0), _) => b.k,
        (_, Count::Known(0)) => a.k,
        (Count::Known(_), Count::Known(_)) => Count::Known(0),
        _ => {
            notes.push("product: k is not composed for infinite first Betti numbers".into());
            Count::Unknown
        }
    };
    let dim = match (a.flags.manifold_dim, b.flags.manifold_dim) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    let flags = SpaceFlags {
        manifold_dim: dim,
        closed: a.flags.closed && b.flags.closed,
        orientable: match (a.flags.orientable, b.flags.orientable) {
            (Some(x), Some(y)) if dim.is_some() => Some(x && y),
            _ => None,
        },
        boundary_nonempty: dim.is_some() && (a.flags.boundary_nonempty || b.flags.boundary_nonempty),
        locally_contractible_at_basepoint: a.flags.locally_contractible_at_basepoint
            && b.flags.locally_contractible_at_basepoint,
        fundamental_group_fg: fg,
        closed_orientable_surface: false,
    }
    .settle();
    InvariantRecord {
        b1: a.b1 + b.b1,
        b1_prime,
        h,
        b2: a.b2 + b.b2 + a.b1 * b.b1,
        k,
        flags,
        notes,
    }
}

/// Shared arithmetic of the free-product gluings: everything adds.
fn additive(a: &InvariantRecord, b: &InvariantRecord, flags: SpaceFlags, notes: Vec<String>) -> InvariantRecord {
    InvariantRecord {
        b1: a.b1 + b.b1,
        b1_prime: a.b1_prime + b.b1_prime,
        h: a.h + b.h,
        b2: a.b2 + b.b2,
        k: a.k + b.k,
        flags,
        notes,
    }
}

fn glued_flags(a: &SpaceFlags, b: &SpaceFlags) -> SpaceFlags {
    SpaceFlags {
        manifold_dim: None,
        closed: false,
        orientable: None,
        boundary_nonempty: false,
        locally_contractible_at_basepoint: a.locally_contractible_at_basepoint
            && b.locally_contractible_at_basepoint,
        fundamental_group_fg: a.fundamental_group_fg && b.fundamental_group_fg,
        closed_orientable_surface: false,
    }
}

fn is_point(r: &InvariantRecord) -> bool {
    r.flags.manifold_dim == Some(0)
}

fn wedge(a: InvariantRecord, b: InvariantRecord, gluing: Gluing) -> InvariantRecord {
    if gluing == Gluing::Point {
        if is_point(&a) {
            return b;
        }
        if is_point(&b) {
            return a;
        }
    }
    let mut notes = merged_notes(&a, &b);
    let flags = glued_flags(&a.flags, &b.flags);
    let mut r = additive(&a, &b, flags, Vec::new());
    if !(a.flags.locally_contractible_at_basepoint && b.flags.locally_contractible_at_basepoint) {
        notes.push("wedge: needs both spaces locally contractible at the base point".into());
        r.b1_prime = Count::Unknown;
        r.h = Count::Unknown;
    }
    if !flags.fundamental_group_fg {
        notes.push("wedge: needs finitely generated fundamental groups".into());
        r.b1_prime = Count::Unknown;
    }
    if gluing == Gluing::Contractible {
        notes.push("wedge: contractible gluing set asserted by the caller".into());
    }
    r.notes = notes;
    r
}

fn union(a: InvariantRecord, b: InvariantRecord, i: Intersection) -> InvariantRecord {
    let mut notes = merged_notes(&a, &b);
    let flags = glued_flags(&a.flags, &b.flags);
    let mut r = additive(&a, &b, flags, Vec::new());
    // H² of the union depends on H¹ and H² of the intersection.
    r.b2 = Count::Unknown;
    r.k = Count::Unknown;
    match i {
        Intersection::SimplyConnected => {
            if !flags.fundamental_group_fg {
                notes.push("union: corank rule needs finitely generated fundamental groups".into());
                r.b1_prime = Count::Unknown;
            }
        }
        Intersection::Acyclic => {
            notes.push("union: corank rule needs a simply connected intersection".into());
            r.b1_prime = Count::Unknown;
        }
        Intersection::Unspecified => {
            notes.push(
                "union: nothing is certified about the intersection; pass intersection=simply_connected or acyclic"
                    .into(),
            );
            r.b1 = Count::Unknown;
            r.b1_prime = Count::Unknown;
            r.h = Count::Unknown;
        }
    }
    notes.push("union: b2 and k depend on the intersection".into());
    r.notes = notes;
    r
}

fn connsum(a: InvariantRecord, b: InvariantRecord) -> InvariantRecord {
    let mut notes = merged_notes(&a, &b);
    let (fa, fb) = (a.flags, b.flags);
    let dim = match (fa.manifold_dim, fb.manifold_dim) {
        (Some(x), Some(y)) if x == y && x >= 1 => x,
        _ => {
            notes.push("connsum: operands must be manifolds of the same dimension".into());
            return InvariantRecord {
                b1: Count::Unknown,
                b1_prime: Count::Unknown,
                h: Count::Unknown,
                b2: Count::Unknown,
                k: Count::Unknown,
                flags: glued_flags(&fa, &fb),
                notes,
            };
        }
    };
    let orientable = match (fa.orientable, fb.orientable) {
        (Some(x), Some(y)) => Some(x && y),
        _ => None,
    };
    let flags = SpaceFlags {
        manifold_dim: Some(dim),
        closed: fa.closed && fb.closed,
        orientable,
        boundary_nonempty: fa.boundary_nonempty || fb.boundary_nonempty,
        locally_contractible_at_basepoint: true,
        fundamental_group_fg: fa.fundamental_group_fg && fb.fundamental_group_fg,
        closed_orientable_surface: false,
    }
    .settle();

    if fa.closed_orientable_surface && fb.closed_orientable_surface {
        return InvariantRecord {
            b1: a.b1 + b.b1,
            b1_prime: a.b1_prime + b.b1_prime,
            h: a.h + b.h,
            b2: Count::Known(1),
            k: Count::Known(0),
            flags,
            notes,
        };
    }
    if dim == 2 {
        // Classification: a closed surface has b1 = 2 − χ (orientable) or
        // 1 − χ, and χ(M # N) = χ(M) + χ(N) − 2.
        let closed = fa.closed && fb.closed;
        let b1 = match (closed, orientable, a.b1, b.b1) {
            (true, Some(_), Count::Known(x), Count::Known(y)) => {
                let chi = |b1: u64, o: Option<bool>| if o == Some(true) { 2 - b1 as i64 } else { 1 - b1 as i64 };
                let chi_sum = chi(x, fa.orientable) + chi(y, fb.orientable) - 2;
                Count::Known((1 - chi_sum) as u64)
            }
            _ => Count::Unknown,
        };
        notes.push(
            "connsum: corank and isotropy rules need closed orientable surfaces (false for nonorientable ones)"
                .into(),
        );
        return InvariantRecord {
            b1,
            b1_prime: Count::Unknown,
            h: Count::Unknown,
            b2: if closed && b1 != Count::Unknown { Count::Known(0) } else { Count::Unknown },
            k: Count::Unknown,
            flags,
            notes,
        };
    }
    if dim < 2 {
        notes.push("connsum: not defined for 1-manifolds".into());
        return InvariantRecord {
            b1: Count::Unknown,
            b1_prime: Count::Unknown,
            h: Count::Unknown,
            b2: Count::Unknown,
            k: Count::Unknown,
            flags,
            notes,
        };
    }
    let mut r = InvariantRecord {
        b1: a.b1 + b.b1,
        b1_prime: a.b1_prime + b.b1_prime,
        h: a.h + b.h,
        // Removing a ball only touches degrees n − 1 and n.
        b2: if dim >= 4 { a.b2 + b.b2 } else { Count::Unknown },
        k: Count::Unknown,
        flags,
        notes: Vec::new(),
    };
    if !flags.fundamental_group_fg {
        notes.push("connsum: needs finitely generated fundamental groups".into());
        r.b1_prime = Count::Unknown;
        r.h = Count::Unknown;
    }
    if dim == 3 {
        notes.push("connsum: b2 of a 3-dimensional sum is not composed".into());
    }
    notes.push("connsum: k is not composed in dimension >= 3".into());
    r.notes = notes;
    r
}

/// Checks `b1' ≤ h ≤ b1` on the known entries. The report's `lhs` is the
/// largest violation `x − y` over known ordered pairs; it passes iff ≤ 0.
pub fn chain_check(name: &str, r: &InvariantRecord) -> Result<BoundReport, AlgebraError> {
    let chain = [("b1'", r.b1_prime), ("h", r.h), ("b1", r.b1)];
    let known = chain.iter().filter(|(_, c)| !c.is_unknown()).count();
    if known < 2 {
        return Err(AlgebraError::Insufficient(format!(
            "{name}: chain check needs two known values among b1', h, b1"
        )));
    }
    let as_f = |c: Count| match c {
        Count::Known(n) => Some(n as f64),
        Count::Infinite => Some(f64::INFINITY),
        Count::Unknown => None,
    };
    let mut worst = f64::NEG_INFINITY;
    for i in 0..3 {
        for j in i + 1..3 {
            if let (Some(x), Some(y)) = (as_f(chain[i].1), as_f(chain[j].1)) {
                let gap = if x == y { 0.0 } else { x - y };
                worst = worst.max(gap);
            }
        }
    }
    let mut report = BoundReport::new("chain", name, "b1' <= h <= b1", worst.min(f64::MAX), 0.0, 0.0);
    for (key, c) in chain {
        report = report.with_input(key, c.to_string());
    }
    Ok(report)
}

/// The isotropy-index bounds from `b1`, `b2` and `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HBounds {
    pub lower: f64,
    pub upper: f64,
    /// Set when `lower > upper`: the literal bounds say nothing.
    pub vacuous: bool,
    pub surjective: SurjectiveBound,
}

/// The sharper upper bound available when the cup product onto `H²` is
/// surjective.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurjectiveBound {
    NotRequested,
    /// Negative radicand.
    NotApplicable,
    Upper(f64),
}

/// `(b1 + k·b2)/(b2 + 1) ≤ h ≤ (b1·b2 + k)/(b2 + 1)`; with a surjective cup
/// product also `h ≤ k + ½ + sqrt((b1 − k − ½)² − 2 b2)`.
pub fn h_bounds(b1: u64, b2: u64, k: u64, cup_surjective: bool) -> HBounds {
    let (b1, b2, k) = (b1 as f64, b2 as f64, k as f64);
    let lower = (b1 + k * b2) / (b2 + 1.0);
    let upper = (b1 * b2 + k) / (b2 + 1.0);
    let surjective = if !cup_surjective {
        SurjectiveBound::NotRequested
    } else {
        let rad = (b1 - k - 0.5).powi(2) - 2.0 * b2;
        if rad < 0.0 {
            SurjectiveBound::NotApplicable
        } else {
            SurjectiveBound::Upper(k + 0.5 + rad.sqrt())
        }
    };
    HBounds {
        lower,
        upper,
        vacuous: lower > upper,
        surjective,
    }
}
