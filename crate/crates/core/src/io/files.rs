//! TOML input files.
//!
//! Group file (`.grp`):
//! ```toml
//! dim = 2
//! basepoint = [0.0, 1.0]        # [horizontal, height]
//! freeness_assumed = true        # optional, defaults to true
//!
//! [[generator]]
//! name = "a"
//! matrix = [[2.0, 0.0], [0.0, 0.5]]   # row-major; entries may be numbers
//!                                     # or complex strings like "2.5i"
//! ```
//!
//! Body-pair file (`.bodies`): two `[[body]]` tables with `role = "minus"`
//! and `role = "plus"`; `kind` is `ball` (center, radius), `horoball`
//! (base, size) or `tube` (endpoints, radius); optional `stabilizer` word.
//!
//! Family file (`.fam`): shared `t` and `l`, `[[member]]` tables and one
//! `[limit]` table, each holding the group-file fields plus a `label` and
//! optional `[[member.body]]` tables.

use std::path::Path;

use num_complex::Complex64;
use toml::value::{Table, Value};

use crate::counting::DecoratedBody;
use crate::error::{Error, Result};
use crate::group::spec::GroupSpec;
use crate::group::word::Word;
use crate::hypgeom::{ConvexBody, Dim, GeodesicLine, HPoint};
use crate::moebius::MobiusMap;
use crate::sweep::{FamilyMember, FamilySpec};
use crate::util::parse_complex;

fn parse_err(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {detail}"))
}

fn as_table<'a>(v: &'a Value, what: &str) -> Result<&'a Table> {
    v.as_table().ok_or_else(|| parse_err(what, "expected a table"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, "expected an array"))
}

fn get<'a>(t: &'a Table, key: &str, what: &str) -> Result<&'a Value> {
    t.get(key).ok_or_else(|| parse_err(what, format!("missing key `{key}`")))
}

fn f64_of(v: &Value, what: &str) -> Result<f64> {
    match v {
        Value::Float(x) => Ok(*x),
        Value::Integer(n) => Ok(*n as f64),
        _ => Err(parse_err(what, "expected a number")),
    }
}

fn complex_of(v: &Value, what: &str) -> Result<Complex64> {
    match v {
        Value::Float(x) => Ok(Complex64::new(*x, 0.0)),
        Value::Integer(n) => Ok(Complex64::new(*n as f64, 0.0)),
        Value::String(s) => parse_complex(s),
        _ => Err(parse_err(what, "expected a number or complex string")),
    }
}

fn str_of<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| parse_err(what, "expected a string"))
}

fn dim_of(t: &Table, what: &str) -> Result<Dim> {
    let n = f64_of(get(t, "dim", what)?, what)? as usize;
    Dim::from_n(n)
}

/// `[horizontal, height]` interior point.
fn point_of(v: &Value, dim: Dim, what: &str) -> Result<HPoint> {
    let arr = as_array(v, what)?;
    if arr.len() != 2 {
        return Err(parse_err(what, "expected [horizontal, height]"));
    }
    let horiz = complex_of(&arr[0], what)?;
    let height = f64_of(&arr[1], what)?;
    HPoint::interior(dim, horiz, height)
}

/// `"inf"` or a complex/real coordinate, as a boundary point.
fn boundary_of(v: &Value, dim: Dim, what: &str) -> Result<HPoint> {
    if let Value::String(s) = v {
        if s.trim() == "inf" {
            return Ok(HPoint::infinity(dim));
        }
    }
    let horiz = complex_of(v, what)?;
    HPoint::boundary(dim, horiz)
}

fn matrix_of(v: &Value, what: &str) -> Result<[[Complex64; 2]; 2]> {
    let rows = as_array(v, what)?;
    if rows.len() != 2 {
        return Err(parse_err(what, "matrix needs two rows"));
    }
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let cols = as_array(row, what)?;
        if cols.len() != 2 {
            return Err(parse_err(what, "matrix rows need two entries"));
        }
        for (j, e) in cols.iter().enumerate() {
            out[i][j] = complex_of(e, what)?;
        }
    }
    Ok(out)
}

/// Build a `GroupSpec` from a table holding `dim`, `basepoint`,
/// optional `freeness_assumed`, and a `generator`/`generators` array.
fn group_from_table(t: &Table, what: &str) -> Result<GroupSpec> {
    let dim = dim_of(t, what)?;
    let basepoint = point_of(get(t, "basepoint", what)?, dim, what)?;
    let freeness_assumed = match t.get("freeness_assumed") {
        Some(v) => v
            .as_bool()
            .ok_or_else(|| parse_err(what, "freeness_assumed must be a boolean"))?,
        None => true,
    };
    let gen_val = t
        .get("generator")
        .or_else(|| t.get("generators"))
        .ok_or_else(|| parse_err(what, "missing generators"))?;
    let mut gens = Vec::new();
    for gv in as_array(gen_val, what)? {
        let gt = as_table(gv, what)?;
        let name = str_of(get(gt, "name", what)?, what)?.to_string();
        let entries = matrix_of(get(gt, "matrix", what)?, what)?;
        gens.push((name, MobiusMap::new(dim, entries)?));
    }
    GroupSpec::new(dim, gens, basepoint, freeness_assumed)
}

fn read_toml(path: &Path) -> Result<Table> {
    let text = std::fs::read_to_string(path)?;
    let value: Value = text
        .parse()
        .map_err(|e| parse_err(&path.display().to_string(), e))?;
    match value {
        Value::Table(t) => Ok(t),
        _ => Err(parse_err(&path.display().to_string(), "expected a TOML table")),
    }
}

/// Load a group file.
pub fn load_group_file(path: impl AsRef<Path>) -> Result<GroupSpec> {
    let path = path.as_ref();
    let t = read_toml(path)?;
    group_from_table(&t, &path.display().to_string())
}

fn body_from_table(t: &Table, spec: &GroupSpec, what: &str) -> Result<(String, DecoratedBody)> {
    let role = str_of(get(t, "role", what)?, what)?.to_string();
    if role != "minus" && role != "plus" {
        return Err(parse_err(what, format!("role must be minus or plus, got `{role}`")));
    }
    let kind = str_of(get(t, "kind", what)?, what)?;
    let dim = spec.dim();
    let body = match kind {
        "ball" => {
            let center = point_of(get(t, "center", what)?, dim, what)?;
            let radius = f64_of(get(t, "radius", what)?, what)?;
            ConvexBody::ball(center, radius)?
        }
        "horoball" => {
            let base = boundary_of(get(t, "base", what)?, dim, what)?;
            let size = f64_of(get(t, "size", what)?, what)?;
            ConvexBody::horoball(base, size)?
        }
        "tube" => {
            let ends = as_array(get(t, "endpoints", what)?, what)?;
            if ends.len() != 2 {
                return Err(parse_err(what, "tube endpoints need two boundary points"));
            }
            let neg = boundary_of(&ends[0], dim, what)?;
            let pos = boundary_of(&ends[1], dim, what)?;
            let radius = f64_of(get(t, "radius", what)?, what)?;
            ConvexBody::tube(GeodesicLine::new(neg, pos)?, radius)?
        }
        other => return Err(parse_err(what, format!("unknown body kind `{other}`"))),
    };
    let stabilizer = match t.get("stabilizer") {
        None => None,
        Some(Value::String(s)) => Some(Word::parse(s, spec)?),
        Some(Value::Array(a)) => {
            if a.len() > 1 {
                return Err(Error::UnsupportedStabilizer(format!(
                    "{} stabilizer words given; only cyclic (one word) or trivial \
                     stabilizers are supported",
                    a.len()
                )));
            }
            match a.first() {
                Some(v) => Some(Word::parse(str_of(v, what)?, spec)?),
                None => None,
            }
        }
        Some(_) => return Err(parse_err(what, "stabilizer must be a word or list of words")),
    };
    Ok((role, DecoratedBody { body, stabilizer }))
}

fn bodies_from_array(
    arr: &[Value],
    spec: &GroupSpec,
    what: &str,
) -> Result<(DecoratedBody, DecoratedBody)> {
    let mut minus = None;
    let mut plus = None;
    for bv in arr {
        let bt = as_table(bv, what)?;
        let (role, db) = body_from_table(bt, spec, what)?;
        let slot = if role == "minus" { &mut minus } else { &mut plus };
        if slot.is_some() {
            return Err(parse_err(what, format!("duplicate `{role}` body")));
        }
        *slot = Some(db);
    }
    match (minus, plus) {
        (Some(m), Some(p)) => Ok((m, p)),
        _ => Err(parse_err(what, "need exactly one minus body and one plus body")),
    }
}

/// Load a body-pair file against an already-loaded group.
pub fn load_bodies_file(
    path: impl AsRef<Path>,
    spec: &GroupSpec,
) -> Result<(DecoratedBody, DecoratedBody)> {
    let path = path.as_ref();
    let what = path.display().to_string();
    let t = read_toml(path)?;
    let arr = as_array(get(&t, "body", &what)?, &what)?;
    bodies_from_array(arr, spec, &what)
}

fn member_from_table(t: &Table, what: &str) -> Result<FamilyMember> {
    let label = str_of(get(t, "label", what)?, what)?.to_string();
    let spec = group_from_table(t, what)?;
    let bodies = match t.get("body") {
        Some(v) => Some(bodies_from_array(as_array(v, what)?, &spec, what)?),
        None => None,
    };
    Ok(FamilyMember { label, spec, bodies })
}

/// Load a family file.
pub fn load_family_file(path: impl AsRef<Path>) -> Result<FamilySpec> {
    let path = path.as_ref();
    let what = path.display().to_string();
    let t = read_toml(path)?;
    let tt = f64_of(get(&t, "t", &what)?, &what)?;
    let l = f64_of(get(&t, "l", &what)?, &what)?;
    let mut members = Vec::new();
    for mv in as_array(get(&t, "member", &what)?, &what)? {
        members.push(member_from_table(as_table(mv, &what)?, &what)?);
    }
    let limit = member_from_table(as_table(get(&t, "limit", &what)?, &what)?, &what)?;
    let family = FamilySpec { members, limit, t: tt, l };
    family.validate()?;
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::hypgeom::Dim;

    fn fixture(name: &str) -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../fixtures")
            .join(name)
    }

    #[test]
    fn loads_all_group_fixtures() {
        let schottky = load_group_file(fixture("schottky.grp")).unwrap();
        assert_eq!(schottky.dim(), Dim::Two);
        assert_eq!(schottky.rank(), 2);
        assert_eq!(schottky.generator_name(0), Some("a"));
        assert_eq!(schottky.generator_name(1), Some("b"));
        assert!(schottky.freeness_assumed());

        let cyclic = load_group_file(fixture("cyclic.grp")).unwrap();
        assert_eq!(cyclic.rank(), 1);
        let tau = cyclic.generator(0).unwrap().translation_length();
        assert!((tau - 4.0f64.ln()).abs() < 1e-12);

        let parabolic = load_group_file(fixture("parabolic.grp")).unwrap();
        assert_eq!(parabolic.dim(), Dim::Three);

        let schottky3 = load_group_file(fixture("schottky3.grp")).unwrap();
        assert_eq!(schottky3.dim(), Dim::Three);
        assert_eq!(schottky3.rank(), 2);

        let pinchlimit = load_group_file(fixture("pinchlimit.grp")).unwrap();
        assert_eq!(pinchlimit.rank(), 2);
    }

    #[test]
    fn loads_body_fixtures_against_their_groups() {
        let schottky = load_group_file(fixture("schottky.grp")).unwrap();

        let (minus, plus) = load_bodies_file(fixture("balls.bodies"), &schottky).unwrap();
        assert!(matches!(minus.body, ConvexBody::Ball { radius, .. } if radius == 0.4));
        assert!(minus.stabilizer.is_none());
        assert!(plus.stabilizer.is_none());

        let (tm, tp) = load_bodies_file(fixture("tubes.bodies"), &schottky).unwrap();
        assert!(matches!(tm.body, ConvexBody::Tube { radius, .. } if radius == 0.3));
        assert_eq!(tm.stabilizer.as_ref().unwrap().format(&schottky), "a");
        assert_eq!(tp.stabilizer.as_ref().unwrap().format(&schottky), "b");

        let schottky3 = load_group_file(fixture("schottky3.grp")).unwrap();
        let (hm, hp) = load_bodies_file(fixture("horoballs3.bodies"), &schottky3).unwrap();
        match (&hm.body, &hp.body) {
            (
                ConvexBody::Horoball { base: bm, size: sm },
                ConvexBody::Horoball { base: bp, size: sp },
            ) => {
                assert!(bm.is_infinity());
                assert!(!bp.is_infinity());
                assert_eq!(*sm, 6.0);
                assert_eq!(*sp, 0.05);
            }
            other => panic!("expected two horoballs, got {other:?}"),
        }
    }

    #[test]
    fn loads_family_fixtures() {
        let pinch = load_family_file(fixture("pinch.fam")).unwrap();
        assert_eq!(pinch.members.len(), 5);
        assert_eq!(pinch.t, 12.0);
        assert_eq!(pinch.l, 10.0);
        assert_eq!(pinch.members[0].label, "u=0.45");
        assert!(pinch.members.iter().all(|m| m.bodies.is_none()));
        assert!(pinch.limit.bodies.is_none());
        // The limit's second generator is parabolic: zero translation length.
        let b = pinch.limit.spec.generator(1).unwrap();
        assert_eq!(b.translation_length(), 0.0);

        let constant = load_family_file(fixture("constant.fam")).unwrap();
        assert_eq!(constant.members.len(), 3);
        assert!(constant.members.iter().all(|m| m.bodies.is_some()));
        assert!(constant.limit.bodies.is_some());
    }

    #[test]
    fn rejects_multi_word_stabilizer_lists() {
        let dir = tempfile::tempdir().unwrap();
        let grp = fixture("schottky.grp");
        let spec = load_group_file(grp).unwrap();
        let path = dir.path().join("bad.bodies");
        std::fs::write(
            &path,
            r#"
[[body]]
role = "minus"
kind = "ball"
center = [0.0, 1.0]
radius = 0.4
stabilizer = ["a", "b"]

[[body]]
role = "plus"
kind = "ball"
center = [0.0, 1.0]
radius = 0.4
"#,
        )
        .unwrap();
        match load_bodies_file(&path, &spec) {
            Err(Error::UnsupportedStabilizer(_)) => {}
            other => panic!("expected UnsupportedStabilizer, got {other:?}"),
        }
        // A singleton list is fine and means a cyclic stabilizer.
        std::fs::write(
            &path,
            r#"
[[body]]
role = "minus"
kind = "ball"
center = [0.0, 1.0]
radius = 0.4
stabilizer = ["a"]

[[body]]
role = "plus"
kind = "ball"
center = [0.0, 1.0]
radius = 0.4
"#,
        )
        .unwrap();
        let (minus, _) = load_bodies_file(&path, &spec).unwrap();
        assert_eq!(minus.stabilizer.unwrap().format(&spec), "a");
    }

    #[test]
    fn rejects_malformed_files() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| -> std::path::PathBuf {
            let p = dir.path().join(name);
            std::fs::write(&p, body).unwrap();
            p
        };

        // Missing generators.
        let p = write("nogen.grp", "dim = 2\nbasepoint = [0.0, 1.0]\n");
        assert!(matches!(load_group_file(p), Err(Error::Parse(_))));

        // Unsupported dimension.
        let p = write(
            "dim4.grp",
            "dim = 4\nbasepoint = [0.0, 1.0]\n[[generator]]\nname = \"a\"\nmatrix = [[2.0, 0.0], [0.0, 0.5]]\n",
        );
        assert!(load_group_file(p).is_err());

        // Bad role.
        let spec = load_group_file(fixture("schottky.grp")).unwrap();
        let p = write(
            "badrole.bodies",
            "[[body]]\nrole = \"left\"\nkind = \"ball\"\ncenter = [0.0, 1.0]\nradius = 0.4\n",
        );
        assert!(matches!(load_bodies_file(p, &spec), Err(Error::Parse(_))));

        // Two minus bodies.
        let p = write(
            "twominus.bodies",
            "[[body]]\nrole = \"minus\"\nkind = \"ball\"\ncenter = [0.0, 1.0]\nradius = 0.4\n\
             [[body]]\nrole = \"minus\"\nkind = \"ball\"\ncenter = [0.0, 1.0]\nradius = 0.4\n",
        );
        assert!(matches!(load_bodies_file(p, &spec), Err(Error::Parse(_))));

        // Not TOML at all.
        let p = write("garbage.grp", "{ this is not toml ]");
        assert!(matches!(load_group_file(p), Err(Error::Parse(_))));
    }
}
