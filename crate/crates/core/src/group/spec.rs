//! Group specifications: an ordered list of named generators (inverses
//! implicit), a basepoint, and a freeness assumption that is spot-checked
//! at construction.

use crate::error::{Error, Result};
use crate::hypgeom::{dist, Dim, HPoint};
use crate::moebius::MobiusMap;

/// Word length up to which the no-relation check runs at construction.
const FREENESS_CHECK_LENGTH: u32 = 6;
/// Matrix distance (±M quotient) below which a word counts as a relation.
const FREENESS_CHECK_TOL: f64 = 1e-8;

/// A finitely generated group of isometries with a marked basepoint.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    dim: Dim,
    gens: Vec<(String, MobiusMap)>,
    basepoint: HPoint,
    freeness_assumed: bool,
}

impl GroupSpec {
    /// Build and validate a spec. Generator names must be distinct
    /// identifiers; no generator may be the identity; when
    /// `freeness_assumed` is set, every nonempty reduced word of length at
    /// most 6 is checked to stay away from ±I.
    pub fn new(
        dim: Dim,
        gens: Vec<(String, MobiusMap)>,
        basepoint: HPoint,
        freeness_assumed: bool,
    ) -> Result<GroupSpec> {
        if gens.is_empty() {
            return Err(Error::InvalidParameter("at least one generator required".into()));
        }
        if gens.len() > 1000 {
            return Err(Error::InvalidParameter("too many generators".into()));
        }
        if !basepoint.is_interior() || basepoint.dim() != dim {
            return Err(Error::InvalidParameter(
                "basepoint must be an interior point of the stated dimension".into(),
            ));
        }
        for (name, g) in &gens {
            if !is_identifier(name) {
                return Err(Error::InvalidParameter(format!(
                    "generator name `{name}` is not an identifier"
                )));
            }
            if g.dim() != dim {
                return Err(Error::DimensionMismatch(dim.n(), g.dim().n()));
            }
            if g.is_identity(1e-12) {
                return Err(Error::InvalidParameter(format!(
                    "generator `{name}` is the identity"
                )));
            }
        }
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if gens[i].0 == gens[j].0 {
                    return Err(Error::InvalidParameter(format!(
                        "duplicate generator name `{}`",
                        gens[i].0
                    )));
                }
            }
        }
        let spec = GroupSpec { dim, gens, basepoint, freeness_assumed };
        if freeness_assumed {
            spec.check_short_relations()?;
        }
        Ok(spec)
    }

    /// Depth-first sweep over nonempty reduced words of length ≤ 6 looking
    /// for accidental relations (±I within 1e−8).
    fn check_short_relations(&self) -> Result<()> {
        let letters = self.letter_maps();
        let identity = MobiusMap::identity(self.dim);
        // Frames: (letter, depth, product).
        let mut stack: Vec<(u16, u32, MobiusMap)> = Vec::new();
        let mut path: Vec<u16> = Vec::new();
        for l in (0..letters.len() as u16).rev() {
            stack.push((l, 0, letters[l as usize]));
        }
        while let Some((letter, depth, map)) = stack.pop() {
            path.truncate(depth as usize);
            path.push(letter);
            if map.proj_dist(&identity) <= FREENESS_CHECK_TOL {
                let word = crate::group::word::Word::from_letters(&path);
                return Err(Error::FreenessViolated(format!(
                    "word `{}` of length {} evaluates to ±identity",
                    word.format(self),
                    depth + 1
                )));
            }
            if depth + 1 < FREENESS_CHECK_LENGTH {
                for l in (0..letters.len() as u16).rev() {
                    if l != letter ^ 1 {
                        stack.push((l, depth + 1, map.compose(&letters[l as usize])));
                    }
                }
            }
        }
        Ok(())
    }

    /// Model dimension.
    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Number of generators (rank of the free group when freeness holds).
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// The marked basepoint.
    pub fn basepoint(&self) -> HPoint {
        self.basepoint
    }

    /// A copy of this spec with the basepoint moved.
    pub fn with_basepoint(&self, basepoint: HPoint) -> Result<GroupSpec> {
        GroupSpec::new(self.dim, self.gens.clone(), basepoint, self.freeness_assumed)
    }

    /// Whether the spec was declared free (enables pruned enumeration).
    pub fn freeness_assumed(&self) -> bool {
        self.freeness_assumed
    }

    /// Generator matrix by index.
    pub fn generator(&self, i: usize) -> Option<MobiusMap> {
        self.gens.get(i).map(|(_, m)| *m)
    }

    /// Generator name by index.
    pub fn generator_name(&self, i: usize) -> Option<&str> {
        self.gens.get(i).map(|(n, _)| n.as_str())
    }

    /// Index of a generator name.
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    /// Iterate over `(name, map)` pairs in order.
    pub fn generators(&self) -> impl Iterator<Item = (&str, &MobiusMap)> {
        self.gens.iter().map(|(n, m)| (n.as_str(), m))
    }

    /// The `2r` letter maps: generator `g` at index `2g`, its inverse at
    /// `2g + 1`.
    pub fn letter_maps(&self) -> Vec<MobiusMap> {
        let mut out = Vec::with_capacity(2 * self.gens.len());
        for (_, m) in &self.gens {
            out.push(*m);
            out.push(m.inverse());
        }
        out
    }

    /// Largest single-letter displacement of the basepoint — the default
    /// pruning slack.
    pub fn max_generator_displacement(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for (_, m) in &self.gens {
            let d = dist(&self.basepoint, &m.apply(&self.basepoint)?)?;
            worst = worst.max(d);
        }
        Ok(worst)
    }

    /// The spec conjugated by `h` (generators `h g h⁻¹`, basepoint `h x₀`).
    pub fn conjugated(&self, h: &MobiusMap) -> Result<GroupSpec> {
        let gens = self
            .gens
            .iter()
            .map(|(n, m)| (n.clone(), h.compose(m).compose(&h.inverse())))
            .collect();
        GroupSpec::new(
            self.dim,
            gens,
            h.apply(&self.basepoint)?,
            self.freeness_assumed,
        )
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
