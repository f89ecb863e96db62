//! Double cosets ⟨u⟩\Γ/⟨v⟩ for cyclic (or trivial) subgroups of a free
//! group: one canonical representative per coset, harvested from an orbit
//! ball.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::orbit::{enumerate_orbit, Certificate, EnumerationMode};
use crate::group::spec::GroupSpec;
use crate::group::word::Word;

/// Cap on plateau exploration while canonicalizing one coset
/// representative; generously above anything the supported stabilizers
/// (single words in a free group) can produce.
const CLOSURE_CAP: usize = 20_000;

#[cfg(test)]
fn word_pow(w: &Word, n: i64) -> Word {
    let base = if n < 0 { w.inverse() } else { w.clone() };
    let mut out = Word::identity();
    for _ in 0..n.unsigned_abs() {
        out = out.concat(&base);
    }
    out
}

fn shorter_or_lex(a: &Word, b: &Word) -> bool {
    a.len() < b.len() || (a.len() == b.len() && a.letter_cmp(b) == std::cmp::Ordering::Less)
}

/// Canonical representative of the double coset ⟨u⟩ w ⟨v⟩: the
/// lexicographically least word of minimal length reachable by one-sided
/// stabilizer moves that never increase length. Exact for the cyclic
/// stabilizers supported here; the exploration cap guards degenerate
/// inputs.
type StabilizerMove = Box<dyn Fn(&Word) -> Word>;

pub(crate) fn canonical_rep(w: &Word, u: Option<&Word>, v: Option<&Word>) -> Word {
    let mut moves: Vec<StabilizerMove> = Vec::new();
    if let Some(u) = u {
        let ul = u.clone();
        let ur = u.inverse();
        moves.push(Box::new(move |x: &Word| ul.concat(x)));
        moves.push(Box::new(move |x: &Word| ur.concat(x)));
    }
    if let Some(v) = v {
        let vr = v.clone();
        let vl = v.inverse();
        moves.push(Box::new(move |x: &Word| x.concat(&vr)));
        moves.push(Box::new(move |x: &Word| x.concat(&vl)));
    }
    if moves.is_empty() {
        return w.clone();
    }

    let mut cur = w.clone();
    'restart: loop {
        // Breadth-first closure over moves that keep the length at the
        // current minimum; restart from any strictly shorter word found.
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        let mut best = cur.clone();
        seen.insert(cur.clone());
        queue.push_back(cur.clone());
        while let Some(x) = queue.pop_front() {
            for m in &moves {
                let y = m(&x);
                if y.len() < cur.len() {
                    cur = y;
                    continue 'restart;
                }
                if y.len() == cur.len() && !seen.contains(&y) {
                    if shorter_or_lex(&y, &best) {
                        best = y.clone();
                    }
                    if seen.len() < CLOSURE_CAP {
                        seen.insert(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        return best;
    }
}

pub(crate) fn normalize_stab(stab: Option<&Word>) -> Option<&Word> {
    stab.filter(|w| !w.is_identity())
}

/// One representative per double coset ⟨stab_minus⟩ γ ⟨stab_plus⟩ over the
/// orbit ball of radius `t`, sorted by (length, letters). Trivial
/// stabilizers are expressed as `None`; the identity coset is included.
pub fn double_cosets(
    spec: &GroupSpec,
    stab_minus: Option<&Word>,
    stab_plus: Option<&Word>,
    t: f64,
    budget: u64,
) -> Result<(Vec<Word>, Certificate)> {
    let u = normalize_stab(stab_minus);
    let v = normalize_stab(stab_plus);
    for (side, w) in [("minus", u), ("plus", v)] {
        if let Some(w) = w {
            if w.evaluate(spec)?.is_identity(1e-12) {
                return Err(Error::InvalidParameter(format!(
                    "{side}-side stabilizer word evaluates to the identity"
                )));
            }
        }
    }
    let batch = enumerate_orbit(spec, t, EnumerationMode::pruned(), budget)?;
    let mut seen: HashSet<Word> = HashSet::new();
    let mut reps: Vec<Word> = Vec::new();
    for e in &batch.entries {
        let rep = canonical_rep(&e.word, u, v);
        if seen.insert(rep.clone()) {
            reps.push(rep);
        }
    }
    reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.letter_cmp(b)));
    Ok((reps, batch.certificate))
}
