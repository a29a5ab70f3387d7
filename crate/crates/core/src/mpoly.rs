//! Sparse multivariate polynomials over the rationals.
//!
//! A polynomial carries its own ordered variable list; all binary operations
//! require identical lists. Terms live in a `BTreeMap` keyed by exponent
//! vector, so iteration order (and hence printing and hashing of results) is
//! lexicographic and reproducible.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rat::{fmt_rat, parse_rat, rat_int, Rat};

/// Exponent vector; same length as the variable list of the owning polynomial.
pub type Expo = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Expo, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_with(vars: Vec<String>) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The monomial `x_idx` with coefficient one.
    pub fn var(vars: &[&str], idx: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(e, rat_int(1));
        p
    }

    pub fn from_terms(vars: Vec<String>, it: impl IntoIterator<Item = (Expo, Rat)>) -> Self {
        let mut p = MPoly {
            vars,
            terms: BTreeMap::new(),
        };
        for (e, c) in it {
            p.add_term(&e, &c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, Error> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn add_term(&mut self, e: &[u32], c: &Rat) {
        debug_assert_eq!(e.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.to_vec()).or_insert_with(|| rat_int(0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(e);
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// The constant value of a degree-zero polynomial.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(rat_int(0));
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn check_same_vars(&self, other: &Self) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero_with(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_vars(other)?;
        let mut out = Self::zero_with(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Expo = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self, Error> {
        let mut out = Self::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            rat_int(1),
        );
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Partial derivative of the given order with respect to one variable.
    pub fn diff(&self, var: &str, order: u32) -> Result<Self, Error> {
        let idx = self.var_index(var)?;
        Ok(self.diff_idx(idx, order))
    }

    pub fn diff_idx(&self, idx: usize, order: u32) -> Self {
        let mut out = Self::zero_with(self.vars.clone());
        for (e, c) in &self.terms {
            if e[idx] < order {
                continue;
            }
            // falling factorial e[idx] * (e[idx]-1) * ... * (e[idx]-order+1)
            let mut factor = rat_int(1);
            for k in 0..order {
                factor *= rat_int((e[idx] - k) as i64);
            }
            let mut e2 = e.clone();
            e2[idx] -= order;
            out.add_term(&e2, &(c * &factor));
        }
        out
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, Error> {
        if point.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = rat_int(0);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute each variable by a polynomial (all in a common target
    /// variable list). Used for affine parameter shifts.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, Error> {
        if images.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let target_vars = match images.first() {
            Some(p) => p.vars.clone(),
            None => Vec::new(),
        };
        let mut out = MPoly::zero_with(target_vars.clone());
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(
                &target_vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                c.clone(),
            );
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].pow(exp)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables
    /// (variable list unchanged; the extracted variable simply no longer
    /// occurs).
    pub fn coeff_of_power(&self, var: &str, k: u32) -> Result<MPoly, Error> {
        let idx = self.var_index(var)?;
        let mut out = Self::zero_with(self.vars.clone());
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut e2 = e.clone();
                e2[idx] = 0;
                out.add_term(&e2, c);
            }
        }
        Ok(out)
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, Error> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    /// True when the variable does not occur in any term.
    pub fn is_independent_of(&self, var: &str) -> Result<bool, Error> {
        Ok(self.degree_in(var)? == 0)
    }

    /// Reinterpret over a different variable list. Every occurring variable
    /// must exist in the new list.
    pub fn with_vars(&self, new_vars: &[&str]) -> Result<MPoly, Error> {
        let mut out = MPoly::zero(new_vars);
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; new_vars.len()];
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    match map[i] {
                        Some(j) => e2[j] = exp,
                        None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                    }
                }
            }
            out.add_term(&e2, c);
        }
        Ok(out)
    }

    /// Apply `self`, read as a constant-coefficient differential operator, to
    /// `target`: the monomial `v^e` acts as `d^e / d v^e`. The i-th operator
    /// variable differentiates the i-th variable of `target`.
    pub fn apply_operator(&self, target: &MPoly) -> Result<MPoly, Error> {
        if self.vars.len() != target.vars.len() {
            return Err(Error::ArityMismatch {
                expected: target.vars.len(),
                got: self.vars.len(),
            });
        }
        let mut out = MPoly::zero_with(target.vars.clone());
        for (e, c) in &self.terms {
            let mut d = target.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    d = d.diff_idx(i, exp);
                    if d.is_zero() {
                        break;
                    }
                }
            }
            out = out.add(&d.scale(c))?;
        }
        Ok(out)
    }

    /// Parse `3/2*a^2*b - c + 5` over the given variables.
    pub fn parse(text: &str, vars: &[&str]) -> Result<MPoly, Error> {
        let mut out = MPoly::zero(vars);
        let text = text.trim();
        if text.is_empty() {
            return Ok(out);
        }
        // split into signed summands (flat sums of products; no parentheses)
        let mut chunks: Vec<(i64, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign: i64 = 1;
        for ch in text.chars() {
            match ch {
                '+' | '-' => {
                    if !cur.trim().is_empty() {
                        chunks.push((sign, cur.trim().to_string()));
                        cur = String::new();
                        sign = 1;
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => cur.push(ch),
            }
        }
        if !cur.trim().is_empty() {
            chunks.push((sign, cur.trim().to_string()));
        }
        for (sgn, chunk) in chunks {
            let mut coeff = rat_int(sgn);
            let mut expo = vec![0u32; vars.len()];
            for factor in chunk.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    continue;
                }
                let (base, pow) = match factor.split_once('^') {
                    Some((b, p)) => {
                        let p: u32 = p
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                        (b.trim(), p)
                    }
                    None => (factor, 1),
                };
                if let Some(idx) = vars.iter().position(|v| *v == base) {
                    expo[idx] += pow;
                } else {
                    let r = parse_rat(base)?;
                    for _ in 0..pow {
                        coeff *= &r;
                    }
                }
            }
            out.add_term(&expo, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mut mon = String::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !mon.is_empty() {
                    mon.push('*');
                }
                mon.push_str(&self.vars[i]);
                if exp > 1 {
                    mon.push_str(&format!("^{exp}"));
                }
            }
            let neg = c < &rat_int(0);
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mon.is_empty() {
                write!(f, "{}", fmt_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{}*{}", fmt_rat(&abs), mon)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// JSON-facing form: coefficients as `"p/q"` strings plus the variable list.
#[derive(Serialize, Deserialize)]
pub struct MPolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl From<&MPoly> for MPolyJson {
    fn from(p: &MPoly) -> Self {
        MPolyJson {
            vars: p.vars.clone(),
            terms: p
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    coeff: fmt_rat(c),
                    exps: e.clone(),
                })
                .collect(),
        }
    }
}

impl MPolyJson {
    pub fn to_poly(&self) -> Result<MPoly, Error> {
        let mut p = MPoly::zero_with(self.vars.clone());
        for t in &self.terms {
            if t.exps.len() != self.vars.len() {
                return Err(Error::Parse("exponent vector length mismatch".into()));
            }
            p.add_term(&t.exps, &parse_rat(&t.coeff)?);
        }
        Ok(p)
    }
}
