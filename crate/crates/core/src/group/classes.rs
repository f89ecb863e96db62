//! Conjugacy classes of loxodromic elements, indexed by cyclically reduced
//! words up to cyclic permutation and inversion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::orbit::{enumerate_full, Certificate, EnumerationMode};
use crate::group::spec::GroupSpec;
use crate::group::word::Word;

/// Translation lengths at or below this are treated as non-loxodromic noise.
const MIN_TRANSLATION_LENGTH: f64 = 1e-9;

/// One conjugacy class of loxodromic elements.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Canonical representative: cyclically reduced, lexicographically
    /// minimal over rotations and inversion.
    pub word: Word,
    /// Translation length of the class (axis displacement).
    pub translation_length: f64,
    /// True iff the cyclic word is not a proper power.
    pub primitive: bool,
}

/// All loxodromic conjugacy classes with translation length ≤ the cutoff.
#[derive(Clone, Debug)]
pub struct ClassList {
    /// Translation-length cutoff requested.
    pub max_length: f64,
    /// Classes sorted by (translation length, representative letters).
    pub classes: Vec<ConjugacyClass>,
    /// Completeness statement of the underlying orbit harvest.
    pub certificate: Certificate,
}

fn inverse_letters(letters: &[u16]) -> Vec<u16> {
    letters.iter().rev().map(|&l| l ^ 1).collect()
}

/// Strip `first == last⁻¹` pairs until the word is cyclically reduced.
fn cyclically_reduce(mut letters: Vec<u16>) -> Vec<u16> {
    while letters.len() >= 2 && letters[0] == (letters[letters.len() - 1] ^ 1) {
        letters.pop();
        letters.remove(0);
    }
    letters
}

/// Lexicographically minimal rotation of `v` (v nonempty).
fn min_rotation(v: &[u16]) -> Vec<u16> {
    let n = v.len();
    let mut best: Option<Vec<u16>> = None;
    for s in 0..n {
        let mut rot = Vec::with_capacity(n);
        rot.extend_from_slice(&v[s..]);
        rot.extend_from_slice(&v[..s]);
        if best.as_ref().is_none_or(|b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap()
}

/// Canonical key of a cyclic word up to rotation and inversion.
fn canonical_cyclic(letters: &[u16]) -> Vec<u16> {
    let a = min_rotation(letters);
    let b = min_rotation(&inverse_letters(letters));
    if a <= b {
        a
    } else {
        b
    }
}

/// A cyclic word is primitive iff it is not a proper power: no rotation by
/// a proper divisor of its length reproduces it.
fn is_primitive(letters: &[u16]) -> bool {
    let n = letters.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (0..n).all(|i| letters[i] == letters[(i + p) % n]) {
            return false;
        }
    }
    true
}

/// Enumerate conjugacy classes of loxodromics with translation length at
/// most `max_length`.
///
/// The orbit ball of radius `max_length + 2·slack` is harvested; each
/// element is cyclically reduced and keyed by its canonical cyclic word, so
/// every class whose minimal-displacement representative falls in the ball
/// appears exactly once. Translation lengths come from the evaluated
/// matrices (trace is conjugation-invariant).
pub fn conjugacy_classes(
    spec: &GroupSpec,
    max_length: f64,
    budget: u64,
) -> Result<ClassList> {
    if !(max_length > 0.0 && max_length.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "max_length must be positive and finite, got {max_length}"
        )));
    }
    if !spec.freeness_assumed() {
        return Err(Error::InvalidParameter(
            "conjugacy class enumeration requires the freeness assumption".into(),
        ));
    }
    let slack = spec.max_generator_displacement()?;
    let harvest = max_length + 2.0 * slack;
    let (entries, certificate) = enumerate_full(
        spec,
        harvest,
        EnumerationMode::Pruned { slack: Some(slack) },
        budget,
    )?;

    let mut seen: HashMap<Vec<u16>, ConjugacyClass> = HashMap::new();
    for (word, map, _) in &entries {
        if word.is_identity() {
            continue;
        }
        let tau = map.translation_length();
        if tau <= MIN_TRANSLATION_LENGTH || tau > max_length {
            continue;
        }
        let cyc = cyclically_reduce(word.letters());
        if cyc.is_empty() {
            continue;
        }
        let key = canonical_cyclic(&cyc);
        if !seen.contains_key(&key) {
            let primitive = is_primitive(&key);
            seen.insert(
                key.clone(),
                ConjugacyClass {
                    word: Word::from_letters(&key),
                    translation_length: tau,
                    primitive,
                },
            );
        }
    }

    let mut classes: Vec<ConjugacyClass> = seen.into_values().collect();
    classes.sort_by(|a, b| {
        a.translation_length
            .total_cmp(&b.translation_length)
            .then_with(|| a.word.letter_cmp(&b.word))
    });
    Ok(ClassList { max_length, classes, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::orbit::DEFAULT_BUDGET;
    use crate::hypgeom::{Dim, HPoint};
    use crate::moebius::MobiusMap;

    fn schottky() -> GroupSpec {
        let a = MobiusMap::from_real([
            [-1.1764705882352942, -4.379411764705883],
            [1.1764705882352942, 3.5294117647058822],
        ])
        .unwrap();
        let b = MobiusMap::from_real([
            [3.5294117647058822, -4.379411764705883],
            [1.1764705882352942, -1.1764705882352942],
        ])
        .unwrap();
        GroupSpec::new(
            Dim::Two,
            vec![("a".to_string(), a), ("b".to_string(), b)],
            HPoint::h2(0.0, 1.0),
            true,
        )
        .unwrap()
    }

    fn cyclic() -> GroupSpec {
        GroupSpec::new(
            Dim::Two,
            vec![(
                "g".to_string(),
                MobiusMap::from_real([[2.0, 0.0], [0.0, 0.5]]).unwrap(),
            )],
            HPoint::h2(0.0, 1.0),
            true,
        )
        .unwrap()
    }

    #[test]
    fn cyclic_word_helpers() {
        // a b a⁻¹ cyclically reduces to b. Letters: a=0, a⁻¹=1, b=2.
        assert_eq!(cyclically_reduce(vec![0, 2, 1]), vec![2]);
        // b a and a b are the same cyclic word.
        assert_eq!(canonical_cyclic(&[2, 0]), canonical_cyclic(&[0, 2]));
        // a b⁻¹ matches its inverse b a⁻¹ after inversion identification.
        assert_eq!(canonical_cyclic(&[0, 3]), canonical_cyclic(&[2, 1]));
        assert!(is_primitive(&[0, 2]));
        assert!(!is_primitive(&[0, 0]));
        assert!(!is_primitive(&[0, 2, 0, 2]));
        assert!(is_primitive(&[0, 0, 2]));
    }

    #[test]
    fn rank_two_short_classes() {
        let spec = schottky();
        // Translation lengths of all words of length ≤ 2; cutoff just above
        // the largest so exactly the six expected classes survive the
        // word-length ≤ 2 filter.
        let words: Vec<Vec<u16>> =
            vec![vec![0], vec![2], vec![0, 0], vec![2, 2], vec![0, 2], vec![0, 3]];
        let mut max_tau: f64 = 0.0;
        for w in &words {
            let tau = Word::from_letters(w).evaluate(&spec).unwrap().translation_length();
            assert!(tau > 0.1, "fixture word should be loxodromic");
            max_tau = max_tau.max(tau);
        }
        let list = conjugacy_classes(&spec, max_tau + 0.01, DEFAULT_BUDGET).unwrap();
        let short: Vec<&ConjugacyClass> =
            list.classes.iter().filter(|c| c.word.len() <= 2).collect();
        assert_eq!(short.len(), 6);
        let expected: Vec<Vec<u16>> = words.iter().map(|w| canonical_cyclic(w)).collect();
        for e in &expected {
            assert!(
                short.iter().any(|c| c.word.letters() == *e),
                "missing class {e:?}"
            );
        }
        // a², b² are proper powers; the other four are primitive.
        let primitive_count = short.iter().filter(|c| c.primitive).count();
        assert_eq!(primitive_count, 4);
        for c in &short {
            let is_square = c.word.letters() == vec![0, 0] || c.word.letters() == vec![2, 2];
            assert_eq!(c.primitive, !is_square);
        }
    }

    #[test]
    fn cyclic_group_classes_are_powers() {
        let spec = cyclic();
        let tau = 4.0f64.ln();
        let list = conjugacy_classes(&spec, 3.0 * tau + 0.01, DEFAULT_BUDGET).unwrap();
        assert_eq!(list.classes.len(), 3);
        for (n, c) in list.classes.iter().enumerate() {
            let n = n + 1;
            assert!((c.translation_length - n as f64 * tau).abs() < 1e-9);
            assert_eq!(c.primitive, n == 1);
            assert_eq!(c.word.len(), n as u64);
        }
    }

    #[test]
    fn class_count_is_conjugation_invariant() {
        let spec = schottky();
        let h = MobiusMap::from_real([[1.0, 0.7], [0.3, 1.2]]).unwrap();
        let conj = spec.conjugated(&h).unwrap();
        let a = conjugacy_classes(&spec, 5.0, DEFAULT_BUDGET).unwrap();
        let b = conjugacy_classes(&conj, 5.0, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.classes.len(), b.classes.len());
        for (x, y) in a.classes.iter().zip(b.classes.iter()) {
            assert!((x.translation_length - y.translation_length).abs() < 1e-8);
        }
    }

    #[test]
    fn classes_respect_length_cutoff() {
        let spec = schottky();
        let list = conjugacy_classes(&spec, 4.0, DEFAULT_BUDGET).unwrap();
        assert!(!list.classes.is_empty());
        assert!(list
            .classes
            .iter()
            .all(|c| c.translation_length <= 4.0 && c.translation_length > 0.0));
        // Sorted by translation length.
        assert!(list
            .classes
            .windows(2)
            .all(|w| w[0].translation_length <= w[1].translation_length));
    }
}
