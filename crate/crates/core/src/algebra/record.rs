use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul};

/// A topological count that may be infinite or not determinable by the
/// rules. Serialized as a number, `"infinite"` or `"unknown"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Count {
    Known(u64),
    Infinite,
    Unknown,
}

impl Count {
    pub fn known(self) -> Option<u64> {
        match self {
            Count::Known(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_unknown(self) -> bool {
        self == Count::Unknown
    }

    pub fn max(self, other: Count) -> Count {
        match (self, other) {
            (Count::Unknown, _) | (_, Count::Unknown) => Count::Unknown,
            (Count::Infinite, _) | (_, Count::Infinite) => Count::Infinite,
            (Count::Known(a), Count::Known(b)) => Count::Known(a.max(b)),
        }
    }
}

/// Product with `0 · ∞ = 0`: a zero-dimensional factor contributes no
/// tensor products.
impl Mul for Count {
    type Output = Count;

    fn mul(self, other: Count) -> Count {
        match (self, other) {
            (Count::Known(0), _) | (_, Count::Known(0)) => Count::Known(0),
            (Count::Unknown, _) | (_, Count::Unknown) => Count::Unknown,
            (Count::Infinite, _) | (_, Count::Infinite) => Count::Infinite,
            (Count::Known(a), Count::Known(b)) => Count::Known(a * b),
        }
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, other: Count) -> Count {
        match (self, other) {
            (Count::Unknown, _) | (_, Count::Unknown) => Count::Unknown,
            (Count::Infinite, _) | (_, Count::Infinite) => Count::Infinite,
            (Count::Known(a), Count::Known(b)) => Count::Known(a + b),
        }
    }
}

impl From<u64> for Count {
    fn from(n: u64) -> Self {
        Count::Known(n)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Known(n) => write!(f, "{n}"),
            Count::Infinite => write!(f, "infinite"),
            Count::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Known(n) => s.serialize_u64(*n),
            Count::Infinite => s.serialize_str("infinite"),
            Count::Unknown => s.serialize_str("unknown"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Count;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer, \"infinite\" or \"unknown\"")
            }

            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Count, E> {
                Ok(Count::Known(n))
            }

            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Count, E> {
                u64::try_from(n)
                    .map(Count::Known)
                    .map_err(|_| E::custom("negative count"))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Count, E> {
                match s {
                    "infinite" => Ok(Count::Infinite),
                    "unknown" => Ok(Count::Unknown),
                    _ => Err(E::unknown_variant(s, &["infinite", "unknown"])),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Structural facts the composition rules depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpaceFlags {
    /// Dimension when the space is a topological manifold (with or without
    /// boundary).
    pub manifold_dim: Option<u32>,
    pub closed: bool,
    /// Meaningful only for manifolds.
    pub orientable: Option<bool>,
    pub boundary_nonempty: bool,
    pub locally_contractible_at_basepoint: bool,
    pub fundamental_group_fg: bool,
    /// Derived: a closed orientable 2-manifold.
    pub closed_orientable_surface: bool,
}

impl SpaceFlags {
    pub(crate) fn manifold(dim: u32, closed: bool, orientable: bool) -> Self {
        SpaceFlags {
            manifold_dim: Some(dim),
            closed,
            orientable: Some(orientable),
            boundary_nonempty: !closed,
            locally_contractible_at_basepoint: true,
            fundamental_group_fg: true,
            closed_orientable_surface: false,
        }
        .settle()
    }

    pub(crate) fn complex() -> Self {
        SpaceFlags {
            manifold_dim: None,
            closed: false,
            orientable: None,
            boundary_nonempty: false,
            locally_contractible_at_basepoint: true,
            fundamental_group_fg: true,
            closed_orientable_surface: false,
        }
    }

    pub(crate) fn settle(mut self) -> Self {
        self.closed_orientable_surface =
            self.manifold_dim == Some(2) && self.closed && self.orientable == Some(true);
        self
    }
}

/// Betti-type invariants of a path-connected space.
///
/// `k` is the dimension of the kernel of the cup-product pairing on
/// `H¹(X; ℚ)`: classes whose product with every class vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub b1: Count,
    pub b1_prime: Count,
    pub h: Count,
    pub b2: Count,
    pub k: Count,
    pub flags: SpaceFlags,
    /// Why any unknown entry is unknown.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl InvariantRecord {
    pub(crate) fn new(b1: u64, b1_prime: u64, h: u64, b2: u64, k: Count, flags: SpaceFlags) -> Self {
        InvariantRecord {
            b1: b1.into(),
            b1_prime: b1_prime.into(),
            h: h.into(),
            b2: b2.into(),
            k,
            flags,
            notes: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        use Count::*;
        assert_eq!(Known(2) + Known(3), Known(5));
        assert_eq!(Known(2) + Infinite, Infinite);
        assert_eq!(Infinite + Unknown, Unknown);
        assert_eq!(Known(0) * Infinite, Known(0));
        assert_eq!(Known(2) * Unknown, Unknown);
        assert_eq!(Known(2).max(Known(7)), Known(7));
    }

    #[test]
    fn count_json() {
        let v = serde_json::to_string(&[Count::Known(3), Count::Infinite, Count::Unknown]).unwrap();
        assert_eq!(v, r#"[3,"infinite","unknown"]"#);
        let back: Vec<Count> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![Count::Known(3), Count::Infinite, Count::Unknown]);
        assert!(serde_json::from_str::<Count>("-1").is_err());
    }
}
