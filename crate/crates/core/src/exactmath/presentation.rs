use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;

use super::{AbelianInvariants, IntMatrix, MathError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize) -> Self {
        Self { generator, inverse: false }
    }

    pub fn inv(self) -> Self {
        Self { generator: self.generator, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A word in the generators and their formal inverses.
///
/// Juxtaposition is composition: the word `x y` stands for `x ∘ y`.
pub type Word = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&last) if last.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Free reduction followed by cancelling matching letters at both ends.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let mut out = free_reduce(w);
    while out.len() >= 2 && out[0].cancels(out[out.len() - 1]) {
        out.pop();
        out.remove(0);
    }
    out
}

/// A finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, MathError> {
        let n = generators.len();
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator >= n) {
                return Err(MathError::UnknownGenerator(l.generator.to_string()));
            }
        }
        Ok(Self { generators, relators })
    }

    pub fn free(generators: Vec<String>) -> Self {
        Self { generators, relators: Vec::new() }
    }

    /// Parses relators written as whitespace separated letters, `x` or `x^-1`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, MathError> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut words = Vec::with_capacity(relators.len());
        for r in relators {
            words.push(parse_word(&gens, r)?);
        }
        Self::new(gens, words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn push_relator(&mut self, w: Word) -> Result<(), MathError> {
        if let Some(l) = w.iter().find(|l| l.generator >= self.generators.len()) {
            return Err(MathError::UnknownGenerator(l.generator.to_string()));
        }
        self.relators.push(w);
        Ok(())
    }

    /// Exponent sum of `w` per generator.
    pub fn exponent_vector(&self, w: &[Letter]) -> Vec<BigInt> {
        let mut v = vec![0i64; self.generators.len()];
        for l in w {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v.into_iter().map(BigInt::from).collect()
    }

    /// Relators as rows of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let cols = self.generators.len();
        let mut m = IntMatrix::zeros(self.relators.len(), cols);
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                let e = &mut m[(i, l.generator)];
                if l.inverse {
                    *e -= 1;
                } else {
                    *e += 1;
                }
            }
        }
        m
    }

    pub fn abelianize(&self) -> AbelianInvariants {
        AbelianInvariants::from_relation_matrix(&self.exponent_matrix())
    }

    /// Tietze simplification bounded by `effort` generator eliminations.
    ///
    /// Each step reduces all relators, then removes one generator defined by a
    /// relator of length one (`x = 1`) or length two in distinct generators
    /// (`x = y^±1`, eliminating the later generator). Stops early when no such
    /// relator remains. `effort == 0` returns the input unchanged.
    pub fn simplify(&self, effort: usize) -> GroupPresentation {
        let mut p = self.clone();
        for _ in 0..effort {
            p.tidy_relators();
            if !p.eliminate_one() {
                break;
            }
        }
        if effort > 0 {
            p.tidy_relators();
        }
        p
    }

    fn tidy_relators(&mut self) {
        let mut seen = HashSet::new();
        let relators = std::mem::take(&mut self.relators);
        self.relators = relators
            .into_iter()
            .map(|r| cyclic_reduce(&r))
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .collect();
    }

    fn eliminate_one(&mut self) -> bool {
        if let Some(idx) = self.relators.iter().position(|r| r.len() == 1) {
            let g = self.relators[idx][0].generator;
            self.relators.remove(idx);
            self.substitute(g, &[]);
            return true;
        }
        let found = self.relators.iter().enumerate().find_map(|(idx, r)| {
            (r.len() == 2 && r[0].generator != r[1].generator).then_some((idx, r[0], r[1]))
        });
        let Some((idx, l0, l1)) = found else {
            return false;
        };
        // relator is cyclic, so l0 l1 = 1 and l1 l0 = 1 both hold
        let (x, other) = if l0.generator > l1.generator { (l0, l1) } else { (l1, l0) };
        // x^e other = 1  =>  x = (other^-1)^e
        let value = if x.inverse { other } else { other.inv() };
        self.relators.remove(idx);
        self.substitute(x.generator, &[value]);
        true
    }

    /// Replaces generator `g` by `value` everywhere, then deletes `g`.
    fn substitute(&mut self, g: usize, value: &[Letter]) {
        let inv_value = inverse_word(value);
        for r in &mut self.relators {
            let mut out = Vec::with_capacity(r.len());
            for &l in r.iter() {
                if l.generator == g {
                    out.extend_from_slice(if l.inverse { &inv_value } else { value });
                } else {
                    out.push(l);
                }
            }
            *r = out;
        }
        self.generators.remove(g);
        for r in &mut self.relators {
            for l in r.iter_mut() {
                if l.generator > g {
                    l.generator -= 1;
                }
            }
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let name = &self.generators[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

pub fn parse_word(generators: &[String], s: &str) -> Result<Word, MathError> {
    let mut w = Vec::new();
    for tok in s.split_whitespace() {
        let (name, inverse) = match tok.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (tok, false),
        };
        let generator = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| MathError::UnknownGenerator(name.to_string()))?;
        w.push(Letter { generator, inverse });
    }
    Ok(w)
}
