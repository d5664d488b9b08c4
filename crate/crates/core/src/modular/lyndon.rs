//! Lyndon words, their standard bracketings, and the expansion of those
//! brackets in the tensor algebra.

use std::collections::HashMap;
use std::fmt;

/// A bracket of letters.
#[derive(Clone, PartialEq, Eq)]
pub enum Bracket {
    Letter(u8),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Letter(c) => write!(f, "{}", letter_name(*c)),
            Bracket::Pair(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn letter_name(c: u8) -> String {
    const NAMES: &[u8] = b"xyzuvw";
    match NAMES.get(c as usize) {
        Some(&n) => (n as char).to_string(),
        None => format!("x{c}"),
    }
}

pub fn word_name(w: &[u8]) -> String {
    w.iter().map(|&c| letter_name(c)).collect::<Vec<_>>().join(if w.iter().any(|&c| c >= 6) { " " } else { "" })
}

/// All Lyndon words of length `d` over letters `0..a`, in lexicographic
/// order.
pub fn lyndon_words(a: usize, d: usize) -> Vec<Vec<u8>> {
    assert!(a >= 1 && a <= 256 && d >= 1);
    let top = (a - 1) as u8;
    let mut out = Vec::new();
    let mut w = vec![0u8];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < d {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(c) => *c += 1,
            None => break,
        }
    }
    out
}

/// Strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = uv` with `v` the longest proper suffix that is itself Lyndon.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    assert!(w.len() >= 2, "letters have no factorisation");
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("last letter is Lyndon");
    w.split_at(i)
}

pub fn standard_bracket(w: &[u8]) -> Bracket {
    if w.len() == 1 {
        return Bracket::Letter(w[0]);
    }
    let (u, v) = standard_factorization(w);
    Bracket::Pair(Box::new(standard_bracket(u)), Box::new(standard_bracket(v)))
}

/// Integer combination of words, keyed by word.
pub type WordPoly = HashMap<Vec<u8>, i64>;

/// Expands `[a, b] = ab - ba` recursively, sharing sub-expansions.
pub struct Expander {
    memo: HashMap<Vec<u8>, WordPoly>,
}

impl Default for Expander {
    fn default() -> Self {
        Self::new()
    }
}

impl Expander {
    pub fn new() -> Self {
        Expander { memo: HashMap::new() }
    }

    /// The standard bracketing of the Lyndon word `w`, expanded.
    pub fn expand(&mut self, w: &[u8]) -> &WordPoly {
        if !self.memo.contains_key(w) {
            let poly = if w.len() == 1 {
                WordPoly::from([(w.to_vec(), 1)])
            } else {
                let (u, v) = standard_factorization(w);
                let a = self.expand(u).clone();
                let b = self.expand(v).clone();
                let mut out = WordPoly::new();
                concat_into(&mut out, &a, &b, 1);
                concat_into(&mut out, &b, &a, -1);
                out.retain(|_, c| *c != 0);
                out
            };
            self.memo.insert(w.to_vec(), poly);
        }
        &self.memo[w]
    }
}

fn concat_into(out: &mut WordPoly, a: &WordPoly, b: &WordPoly, sign: i64) {
    for (x, cx) in a {
        for (y, cy) in b {
            let mut w = x.clone();
            w.extend_from_slice(y);
            *out.entry(w).or_insert(0) += sign * cx * cy;
        }
    }
}

/// Position of `w` in the natural basis of `T^d` over `a` letters, first
/// letter most significant; this order agrees with the lexicographic one.
pub fn word_index(w: &[u8], a: usize) -> u64 {
    w.iter().fold(0u64, |acc, &c| acc * a as u64 + c as u64)
}

#[derive(Clone, Debug)]
pub struct LyndonEntry {
    pub word: Vec<u8>,
    pub bracket: Bracket,
    /// `(word index, coefficient)` sorted by index.
    pub expansion: Vec<(u64, i64)>,
}

/// The Lyndon basis of the degree-`d` part of the free Lie algebra on `a`
/// letters.
#[derive(Clone, Debug)]
pub struct LyndonBasis {
    pub a: usize,
    pub d: usize,
    pub entries: Vec<LyndonEntry>,
}

impl LyndonBasis {
    pub fn new(a: usize, d: usize) -> Self {
        let mut ex = Expander::new();
        let entries = lyndon_words(a, d)
            .into_iter()
            .map(|word| {
                let mut expansion: Vec<(u64, i64)> =
                    ex.expand(&word).iter().map(|(w, &c)| (word_index(w, a), c)).collect();
                expansion.sort_unstable();
                LyndonEntry { bracket: standard_bracket(&word), word, expansion }
            })
            .collect();
        LyndonBasis { a, d, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
