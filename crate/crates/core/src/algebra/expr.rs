//! Space expressions and their text syntax.
//!
//! ```text
//! expr  := name [ "(" arg { "," arg } ")" ]
//! arg   := expr | number | key "=" (number | name)
//! ```
//!
//! Operations (`product`, `union`, `wedge`, `connsum`) take two or more
//! operands and fold to the left. Whitespace is ignored.

use super::table::BaseSpace;
use super::AlgebraError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// What the user certifies about `X₁ ∩ X₂` in a union of open subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Intersection {
    /// Nonempty and simply connected.
    SimplyConnected,
    /// Nonempty, path-connected, with `H¹(X₁ ∩ X₂; ℚ) = 0`.
    Acyclic,
    Unspecified,
}

/// The subset along which a wedge glues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gluing {
    Point,
    /// A larger subset, asserted contractible with contractible
    /// neighbourhoods in both operands.
    Contractible,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceExpr {
    Base(BaseSpace),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    Union(Box<SpaceExpr>, Box<SpaceExpr>, Intersection),
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>, Gluing),
    ConnSum(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn base(b: BaseSpace) -> Self {
        SpaceExpr::Base(b)
    }

    pub fn product(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn union(a: SpaceExpr, b: SpaceExpr, i: Intersection) -> Self {
        SpaceExpr::Union(Box::new(a), Box::new(b), i)
    }

    pub fn wedge(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::Wedge(Box::new(a), Box::new(b), Gluing::Point)
    }

    pub fn connsum(a: SpaceExpr, b: SpaceExpr) -> Self {
        SpaceExpr::ConnSum(Box::new(a), Box::new(b))
    }

    /// The same expression with the operands of the top operation swapped.
    pub fn swapped(&self) -> SpaceExpr {
        match self.clone() {
            SpaceExpr::Base(b) => SpaceExpr::Base(b),
            SpaceExpr::Product(a, b) => SpaceExpr::Product(b, a),
            SpaceExpr::Union(a, b, i) => SpaceExpr::Union(b, a, i),
            SpaceExpr::Wedge(a, b, g) => SpaceExpr::Wedge(b, a, g),
            SpaceExpr::ConnSum(a, b) => SpaceExpr::ConnSum(b, a),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Base(b) => write!(f, "{b}"),
            SpaceExpr::Product(a, b) => write!(f, "product({a}, {b})"),
            SpaceExpr::Union(a, b, Intersection::Unspecified) => write!(f, "union({a}, {b})"),
            SpaceExpr::Union(a, b, Intersection::SimplyConnected) => {
                write!(f, "union({a}, {b}, intersection=simply_connected)")
            }
            SpaceExpr::Union(a, b, Intersection::Acyclic) => {
                write!(f, "union({a}, {b}, intersection=acyclic)")
            }
            SpaceExpr::Wedge(a, b, Gluing::Point) => write!(f, "wedge({a}, {b})"),
            SpaceExpr::Wedge(a, b, Gluing::Contractible) => write!(f, "wedge({a}, {b}, along=contractible)"),
            SpaceExpr::ConnSum(a, b) => write!(f, "connsum({a}, {b})"),
        }
    }
}

impl std::str::FromStr for SpaceExpr {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    Comma,
    Eq,
}

fn perr(pos: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse { pos, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' | ')' | ',' | '=' => {
                it.next();
                out.push((
                    i,
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        _ => Tok::Eq,
                    },
                ));
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while let Some(&(k, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    j = k + d.len_utf8();
                    it.next();
                }
                let n = s[i..j].parse().map_err(|_| perr(i, format!("number '{}' is too large", &s[i..j])))?;
                out.push((i, Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while let Some(&(k, d)) = it.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_' || d == '-') {
                        break;
                    }
                    j = k + d.len_utf8();
                    it.next();
                }
                out.push((i, Tok::Ident(s[i..j].to_ascii_lowercase().replace('-', "_"))));
            }
            _ => return Err(perr(i, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

enum Arg {
    Expr(usize, SpaceExpr),
    Num(usize, u32),
    Named(usize, String, NamedValue),
}

enum NamedValue {
    Num(u32),
    Name(String),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|t| &t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<SpaceExpr, AlgebraError> {
        let pos = self.pos();
        let name = match self.bump() {
            Some(Tok::Ident(n)) => n,
            Some(_) => return Err(perr(pos, "expected a space name")),
            None => return Err(perr(pos, "expected a space name, found end of input")),
        };
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.bump();
            if self.peek() == Some(&Tok::RParen) {
                self.bump();
            } else {
                loop {
                    args.push(self.arg()?);
                    let p = self.pos();
                    match self.bump() {
                        Some(Tok::Comma) => continue,
                        Some(Tok::RParen) => break,
                        _ => return Err(perr(p, "expected ',' or ')'")),
                    }
                }
            }
        }
        build(pos, &name, args)
    }

    fn arg(&mut self) -> Result<Arg, AlgebraError> {
        let pos = self.pos();
        match (self.peek().cloned(), self.peek2()) {
            (Some(Tok::Num(n)), _) => {
                self.bump();
                Ok(Arg::Num(pos, n))
            }
            (Some(Tok::Ident(key)), Some(Tok::Eq)) => {
                self.bump();
                self.bump();
                let vpos = self.pos();
                let value = match self.bump() {
                    Some(Tok::Num(n)) => NamedValue::Num(n),
                    Some(Tok::Ident(v)) => NamedValue::Name(v),
                    _ => return Err(perr(vpos, format!("expected a value for '{key}'"))),
                };
                Ok(Arg::Named(pos, key, value))
            }
            _ => Ok(Arg::Expr(pos, self.expr()?)),
        }
    }
}

/// Parses a space expression. Errors carry the byte offset of the problem.
pub fn parse(s: &str) -> Result<SpaceExpr, AlgebraError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(perr(p.pos(), "unexpected input after expression"));
    }
    Ok(e)
}

fn build(pos: usize, name: &str, args: Vec<Arg>) -> Result<SpaceExpr, AlgebraError> {
    match name {
        "product" | "union" | "wedge" | "connsum" | "connected_sum" => operation(pos, name, args),
        _ => base(pos, name, args).map(SpaceExpr::Base),
    }
}

fn operation(pos: usize, name: &str, args: Vec<Arg>) -> Result<SpaceExpr, AlgebraError> {
    let mut operands = Vec::new();
    let mut intersection = Intersection::Unspecified;
    let mut gluing = Gluing::Point;
    for a in args {
        match a {
            Arg::Expr(_, e) => operands.push(e),
            Arg::Num(p, _) => return Err(perr(p, format!("{name} takes spaces, not numbers"))),
            Arg::Named(p, key, value) => match (name, key.as_str(), value) {
                ("union", "intersection", NamedValue::Name(v)) => {
                    intersection = match v.as_str() {
                        "simply_connected" => Intersection::SimplyConnected,
                        "acyclic" => Intersection::Acyclic,
                        "unspecified" => Intersection::Unspecified,
                        _ => {
                            return Err(perr(p, format!(
                                "intersection must be simply_connected, acyclic or unspecified, got '{v}'"
                            )))
                        }
                    }
                }
                ("wedge", "along", NamedValue::Name(v)) => {
                    gluing = match v.as_str() {
                        "point" => Gluing::Point,
                        "contractible" => Gluing::Contractible,
                        _ => return Err(perr(p, format!("along must be point or contractible, got '{v}'"))),
                    }
                }
                _ => return Err(perr(p, format!("{name} has no option '{key}'"))),
            },
        }
    }
    if operands.len() < 2 {
        return Err(perr(pos, format!("{name} needs at least two operands")));
    }
    let mut it = operands.into_iter();
    let first = it.next().expect("two operands");
    Ok(it.fold(first, |acc, e| match name {
        "product" => SpaceExpr::product(acc, e),
        "union" => SpaceExpr::union(acc, e, intersection),
        "wedge" => SpaceExpr::Wedge(Box::new(acc), Box::new(e), gluing),
        _ => SpaceExpr::connsum(acc, e),
    }))
}

fn base(pos: usize, name: &str, args: Vec<Arg>) -> Result<BaseSpace, AlgebraError> {
    let mut positional = Vec::new();
    let mut named: Vec<(usize, String, u32)> = Vec::new();
    for a in args {
        match a {
            Arg::Num(_, n) => positional.push(n),
            Arg::Named(p, k, NamedValue::Num(n)) => named.push((p, k, n)),
            Arg::Named(p, k, NamedValue::Name(v)) => {
                return Err(perr(p, format!("parameter '{k}' must be a number, got '{v}'")))
            }
            Arg::Expr(p, _) => return Err(perr(p, format!("{name} takes numbers, not spaces"))),
        }
    }
    // Parameter i of this base: positional slot i, or one of the given keys.
    let mut take = |i: usize, keys: &[&str], default: Option<u32>| -> Result<u32, AlgebraError> {
        if let Some(j) = named.iter().position(|(_, k, _)| keys.contains(&k.as_str())) {
            return Ok(named.remove(j).2);
        }
        positional
            .get(i)
            .copied()
            .or(default)
            .ok_or_else(|| perr(pos, format!("{name} needs parameter '{}'", keys[0])))
    };
    let b = match name {
        "point" => BaseSpace::Point,
        "circle" => BaseSpace::Circle,
        "sphere" | "sphere_n" => BaseSpace::Sphere(take(0, &["n", "dim"], Some(2))?),
        "torus" | "torus_n" => BaseSpace::Torus(take(0, &["n", "dim"], Some(2))?),
        "surface" | "orientable" | "orientable_surface" => BaseSpace::Orientable {
            genus: take(0, &["g", "genus"], None)?,
            boundary: take(1, &["boundary", "h", "b"], Some(0))?,
        },
        "nonorientable" | "nonorientable_surface" => BaseSpace::Nonorientable {
            genus: take(0, &["g", "genus"], None)?,
            boundary: take(1, &["boundary", "h", "b"], Some(0))?,
        },
        "projective_plane" | "rp2" => BaseSpace::ProjectivePlane,
        "bouquet" | "wedge_of_circles" | "wedge_of_r_circles" => BaseSpace::Bouquet(take(0, &["r"], None)?),
        _ => return Err(AlgebraError::UnknownSpace(name.to_string())),
    };
    if let Some((p, k, _)) = named.first() {
        return Err(perr(*p, format!("{name} has no parameter '{k}'")));
    }
    b.validate()?;
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_expressions() {
        let e = parse("product(torus(3), surface(g=2))").unwrap();
        assert_eq!(
            e,
            SpaceExpr::product(
                SpaceExpr::base(BaseSpace::Torus(3)),
                SpaceExpr::base(BaseSpace::Orientable { genus: 2, boundary: 0 })
            )
        );
        let e = parse(" connsum ( nonorientable ( g = 1 ) , nonorientable(g=1) ) ").unwrap();
        assert!(matches!(e, SpaceExpr::ConnSum(..)));
        assert_eq!(parse("circle").unwrap(), SpaceExpr::base(BaseSpace::Circle));
        let e = parse("union(circle, circle, intersection=simply_connected)").unwrap();
        assert!(matches!(e, SpaceExpr::Union(_, _, Intersection::SimplyConnected)));
    }

    #[test]
    fn operations_fold_left() {
        let e = parse("wedge(circle, torus, sphere)").unwrap();
        let want = SpaceExpr::wedge(
            SpaceExpr::wedge(SpaceExpr::base(BaseSpace::Circle), SpaceExpr::base(BaseSpace::Torus(2))),
            SpaceExpr::base(BaseSpace::Sphere(2)),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "product(torus(3), wedge(circle, circle))",
            "connsum(surface(g=2), surface(g=1))",
            "union(bouquet(2), nonorientable(g=3, boundary=1), intersection=acyclic)",
            "wedge(sphere(4), projective_plane, along=contractible)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = |s: &str| match parse(s) {
            Err(AlgebraError::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("product(circle"), 14);
        assert_eq!(err("product(circle, )"), 16);
        assert_eq!(err("circle circle"), 7);
        assert_eq!(err("product(circle)"), 0);
        assert_eq!(err("torus(3) $"), 9);
        assert_eq!(err("union(circle, circle, intersection=open)"), 22);
        assert!(matches!(parse("klein(2)"), Err(AlgebraError::UnknownSpace(_))));
        assert!(matches!(parse("nonorientable(g=0)"), Err(AlgebraError::BadParameter { .. })));
    }
}
