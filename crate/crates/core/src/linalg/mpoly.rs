use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::rational::{self, Rational};

/// Sparse multivariate polynomial over ℚ in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add_assign_scaled(&mut self, other: &MPoly, c: &Rational) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (e, v) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += v * c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    /// Adds `c` times the product of the listed variables (repeats allowed).
    pub fn add_term(&mut self, vars: &[usize], c: &Rational) {
        if c.is_zero() {
            return;
        }
        let mut e = vec![0u32; self.nvars];
        for &v in vars {
            e[v] += 1;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(k, _)| **k > 0)
                    .fold(c.clone(), |acc, (k, x)| acc * num::pow(x.clone(), *k as usize))
            })
            .sum()
    }

    /// Make the first nonzero coefficient (in monomial order) equal to 1.
    pub fn normalized(&self) -> MPoly {
        let Some(lead) = self.terms.values().next() else {
            return self.clone();
        };
        let inv = lead.recip();
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &inv)).collect() }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { format!("p{i}") } else { format!("p{i}^{k}") })
                    .collect();
                if mono.is_empty() {
                    rational::format(c)
                } else {
                    format!("{}*{}", rational::format(c), mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn product_and_evaluation() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let mut p = x.mul(&y);
        p.add_assign_scaled(&x.mul(&x), &int(-1));
        // xy - x^2 at (2, 3) = 6 - 4
        assert_eq!(p.eval(&[int(2), int(3)]), int(2));
        let mut q = p.clone();
        q.add_assign_scaled(&p, &int(-1));
        assert!(q.is_zero());
        assert_eq!(p.total_degree(), 2);
    }
}
