//! Exhaustive formula corpora.

use std::sync::Arc;

use crate::formula::{Formula, SentenceLetter};

/// Every formula of depth at most `depth` over `letters`: the letters, then negations and
/// binary compounds (`&`, `|`, `->`) of shallower formulas. Deterministic order; subtrees are
/// shared between corpus members.
///
/// Over two letters this yields 2, 16, 786 and 1 854 176 formulas for depths 0 to 3.
pub fn formulas_up_to_depth(depth: usize, letters: &[SentenceLetter]) -> Vec<Formula> {
    let atoms: Vec<Arc<Formula>> = letters
        .iter()
        .cloned()
        .map(|l| Arc::new(Formula::Letter(l)))
        .collect();
    let mut level = atoms.clone();
    for _ in 0..depth {
        let mut next = atoms.clone();
        next.reserve(level.len() + 3 * level.len() * level.len());
        next.extend(level.iter().map(|x| Arc::new(Formula::Not(x.clone()))));
        for l in &level {
            for r in &level {
                next.push(Arc::new(Formula::And(l.clone(), r.clone())));
                next.push(Arc::new(Formula::Or(l.clone(), r.clone())));
                next.push(Arc::new(Formula::Implies(l.clone(), r.clone())));
            }
        }
        level = next;
    }
    level.iter().map(|f| Formula::clone(f)).collect()
}

/// Number of formulas [`formulas_up_to_depth`] yields, without building them.
pub fn corpus_size(depth: usize, letter_count: usize) -> u128 {
    let atoms = letter_count as u128;
    (0..depth).fold(atoms, |n, _| atoms + n + 3 * n * n)
}
