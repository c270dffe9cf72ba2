//! Reference values for the base spaces.

use super::record::{Count, InvariantRecord, SpaceFlags};
use super::AlgebraError;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseSpace {
    Point,
    Circle,
    /// The `n`-sphere, `n ≥ 1`.
    Sphere(u32),
    /// The `n`-torus, `n ≥ 1`.
    Torus(u32),
    /// `M_{g,b}`: orientable surface of genus `g` with `b` boundary circles.
    Orientable { genus: u32, boundary: u32 },
    /// `N_{g,b}`: connected sum of `g ≥ 1` projective planes with `b`
    /// boundary circles.
    Nonorientable { genus: u32, boundary: u32 },
    ProjectivePlane,
    /// Wedge of `r` circles.
    Bouquet(u32),
}

impl fmt::Display for BaseSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseSpace::Point => write!(f, "point"),
            BaseSpace::Circle => write!(f, "circle"),
            BaseSpace::Sphere(n) => write!(f, "sphere({n})"),
            BaseSpace::Torus(n) => write!(f, "torus({n})"),
            BaseSpace::Orientable { genus, boundary: 0 } => write!(f, "surface(g={genus})"),
            BaseSpace::Orientable { genus, boundary } => write!(f, "surface(g={genus}, boundary={boundary})"),
            BaseSpace::Nonorientable { genus, boundary: 0 } => write!(f, "nonorientable(g={genus})"),
            BaseSpace::Nonorientable { genus, boundary } => {
                write!(f, "nonorientable(g={genus}, boundary={boundary})")
            }
            BaseSpace::ProjectivePlane => write!(f, "projective_plane"),
            BaseSpace::Bouquet(r) => write!(f, "bouquet({r})"),
        }
    }
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

fn bad(name: &str, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::BadParameter {
        name: name.to_string(),
        reason: reason.into(),
    }
}

impl BaseSpace {
    pub fn validate(&self) -> Result<(), AlgebraError> {
        match *self {
            BaseSpace::Sphere(0) => Err(bad("sphere", "dimension must be at least 1")),
            BaseSpace::Torus(0) => Err(bad("torus", "dimension must be at least 1")),
            BaseSpace::Nonorientable { genus: 0, .. } => {
                Err(bad("nonorientable", "genus must be at least 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn record(&self) -> Result<InvariantRecord, AlgebraError> {
        self.validate()?;
        // Free fundamental group: b1' = h = b1, trivial cup product.
        let free = |r: u64, flags: SpaceFlags| InvariantRecord::new(r, r, r, 0, Count::Known(r), flags);
        Ok(match *self {
            BaseSpace::Point => InvariantRecord::new(0, 0, 0, 0, Count::Known(0), SpaceFlags::manifold(0, true, true)),
            BaseSpace::Circle => free(1, SpaceFlags::manifold(1, true, true)),
            BaseSpace::Sphere(1) => BaseSpace::Circle.record()?,
            BaseSpace::Sphere(n) => {
                let b2 = u64::from(n == 2);
                InvariantRecord::new(0, 0, 0, b2, Count::Known(0), SpaceFlags::manifold(n, true, true))
            }
            BaseSpace::Torus(1) => BaseSpace::Circle.record()?,
            BaseSpace::Torus(n) => {
                let n64 = u64::from(n);
                InvariantRecord::new(n64, 1, 1, choose2(n64), Count::Known(0), SpaceFlags::manifold(n, true, true))
            }
            BaseSpace::Orientable { genus: 0, boundary: 0 } => BaseSpace::Sphere(2).record()?,
            BaseSpace::Orientable { genus, boundary: 0 } => {
                let g = u64::from(genus);
                InvariantRecord::new(2 * g, g, g, 1, Count::Known(0), SpaceFlags::manifold(2, true, true))
            }
            BaseSpace::Orientable { genus, boundary } => free(
                2 * u64::from(genus) + u64::from(boundary) - 1,
                SpaceFlags::manifold(2, false, true),
            ),
            BaseSpace::ProjectivePlane | BaseSpace::Nonorientable { genus: 1, boundary: 0 } => {
                InvariantRecord::new(0, 0, 0, 0, Count::Known(0), SpaceFlags::manifold(2, true, false))
            }
            BaseSpace::Nonorientable { genus, boundary: 0 } => {
                let g = u64::from(genus);
                // Torsion in H² dies on a finite-index subgroup, so every
                // free class is isotropic: h = b1.
                let mut r = InvariantRecord::new(g - 1, g / 2, g - 1, 0, Count::Unknown, SpaceFlags::manifold(2, true, false));
                r.notes.push("k: cup-product kernel of a nonorientable surface is not tabulated".into());
                r
            }
            BaseSpace::Nonorientable { genus, boundary } => free(
                u64::from(genus) + u64::from(boundary) - 1,
                SpaceFlags::manifold(2, false, false),
            ),
            BaseSpace::Bouquet(0) => BaseSpace::Point.record()?,
            BaseSpace::Bouquet(1) => BaseSpace::Circle.record()?,
            BaseSpace::Bouquet(r) => free(u64::from(r), SpaceFlags::complex()),
        })
    }

    /// Looks up a base space by its reference-table name.
    pub fn from_table_name(name: &str, params: &[u32]) -> Result<BaseSpace, AlgebraError> {
        let arg = |i: usize| {
            params
                .get(i)
                .copied()
                .ok_or_else(|| bad(name, format!("expects {} parameter(s)", i + 1)))
        };
        let base = match name {
            "point" => BaseSpace::Point,
            "circle" => BaseSpace::Circle,
            "sphere_n" => BaseSpace::Sphere(arg(0)?),
            "torus_n" => BaseSpace::Torus(arg(0)?),
            "orientable_surface_g" => BaseSpace::Orientable { genus: arg(0)?, boundary: 0 },
            "nonorientable_surface_g" => BaseSpace::Nonorientable { genus: arg(0)?, boundary: 0 },
            "orientable_surface_g_h_boundary" => {
                let boundary = arg(1)?;
                if boundary == 0 {
                    return Err(bad(name, "needs at least one boundary component"));
                }
                BaseSpace::Orientable { genus: arg(0)?, boundary }
            }
            "nonorientable_surface_g_h_boundary" => {
                let boundary = arg(1)?;
                if boundary == 0 {
                    return Err(bad(name, "needs at least one boundary component"));
                }
                BaseSpace::Nonorientable { genus: arg(0)?, boundary }
            }
            "projective_plane" => BaseSpace::ProjectivePlane,
            "wedge_of_r_circles" => BaseSpace::Bouquet(arg(0)?),
            _ => return Err(AlgebraError::UnknownSpace(name.to_string())),
        };
        base.validate()?;
        Ok(base)
    }
}

/// Reference-table record by name, e.g. `base_table("torus_n", &[3])`.
pub fn base_table(name: &str, params: &[u32]) -> Result<InvariantRecord, AlgebraError> {
    BaseSpace::from_table_name(name, params)?.record()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: u64) -> Count {
        Count::Known(n)
    }

    #[test]
    fn tabulated_values() {
        for n in 1..=10u32 {
            let r = base_table("torus_n", &[n]).unwrap();
            assert_eq!((r.b1_prime, r.b1), (k(1), k(u64::from(n))));
        }
        for g in 1..=10u32 {
            let r = base_table("orientable_surface_g", &[g]).unwrap();
            assert_eq!((r.b1_prime, r.b1, r.h), (k(g.into()), k(2 * u64::from(g)), k(g.into())));
            assert!(r.flags.closed_orientable_surface);
            let r = base_table("nonorientable_surface_g", &[g]).unwrap();
            assert_eq!((r.b1_prime, r.b1), (k(u64::from(g / 2)), k(u64::from(g - 1))));
            assert!(r.k.is_unknown() || g == 1);
            for h in 1..4u32 {
                let r = base_table("orientable_surface_g_h_boundary", &[g, h]).unwrap();
                assert_eq!(r.b1_prime, k(u64::from(2 * g + h - 1)));
                assert_eq!(r.b1, r.b1_prime);
                let r = base_table("nonorientable_surface_g_h_boundary", &[g, h]).unwrap();
                assert_eq!(r.b1_prime, k(u64::from(g + h - 1)));
                assert_eq!(r.b1, r.b1_prime);
            }
        }
        let p = base_table("projective_plane", &[]).unwrap();
        assert_eq!((p.b1_prime, p.b1), (k(0), k(0)));
        assert_eq!(base_table("wedge_of_r_circles", &[4]).unwrap().b1_prime, k(4));
        assert_eq!(base_table("sphere_n", &[2]).unwrap().b2, k(1));
        assert_eq!(base_table("sphere_n", &[3]).unwrap().b2, k(0));
    }

    #[test]
    fn rejects_bad_names_and_params() {
        assert!(matches!(base_table("klein", &[]), Err(AlgebraError::UnknownSpace(_))));
        assert!(base_table("nonorientable_surface_g", &[0]).is_err());
        assert!(base_table("torus_n", &[]).is_err());
        assert!(base_table("orientable_surface_g_h_boundary", &[1, 0]).is_err());
    }
}
