#![allow(dead_code)]

use std::collections::HashMap;

use catuskoti::Formula;
use rand::rngs::StdRng;
use rand::Rng;

/// Random formula of depth at most `max_depth` over the named letters.
pub fn random_formula(rng: &mut StdRng, max_depth: usize, letters: &[&str]) -> Formula {
    if max_depth == 0 || rng.gen_bool(0.2) {
        return Formula::atom(letters[rng.gen_range(0..letters.len())]);
    }
    let d = max_depth - 1;
    match rng.gen_range(0..4) {
        0 => random_formula(rng, d, letters).not(),
        1 => random_formula(rng, d, letters).and(random_formula(rng, d, letters)),
        2 => random_formula(rng, d, letters).or(random_formula(rng, d, letters)),
        _ => random_formula(rng, d, letters).implies(random_formula(rng, d, letters)),
    }
}

/// Truth-table evaluator that shares no code with the library's evaluator.
pub fn naive_eval(f: &Formula, row: &HashMap<String, bool>) -> bool {
    match f {
        Formula::Letter(l) => row[l.name()],
        Formula::Not(x) => !naive_eval(x, row),
        Formula::And(l, r) => naive_eval(l, row) && naive_eval(r, row),
        Formula::Or(l, r) => naive_eval(l, row) || naive_eval(r, row),
        Formula::Implies(l, r) => !naive_eval(l, row) || naive_eval(r, row),
    }
}

pub fn naive_letters(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Letter(l) => {
            if !out.iter().any(|n| n == l.name()) {
                out.push(l.name().to_string());
            }
        }
        Formula::Not(x) => naive_letters(x, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            naive_letters(l, out);
            naive_letters(r, out);
        }
    }
}

/// Rows of the truth table over `letters`, first letter most significant.
pub fn naive_rows(letters: &[String]) -> Vec<HashMap<String, bool>> {
    let n = letters.len();
    (0..1usize << n)
        .map(|k| {
            letters
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), (k >> (n - 1 - i)) & 1 == 1))
                .collect()
        })
        .collect()
}

/// The column of `f` over its own letters.
pub fn naive_column(f: &Formula) -> (Vec<HashMap<String, bool>>, Vec<bool>) {
    let mut letters = Vec::new();
    naive_letters(f, &mut letters);
    let rows = naive_rows(&letters);
    let column = rows.iter().map(|r| naive_eval(f, r)).collect();
    (rows, column)
}
