use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{q, rational_to_string, Rational};
use crate::error::{CkfError, Result};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals with an explicit,
/// ordered variable list. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        Self {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[String]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[String], i: usize) -> Self {
        assert!(i < vars.len());
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, Rational::one());
        p
    }

    /// Variable by name. Panics if absent.
    pub fn var_named(vars: &[String], name: &str) -> Self {
        let i = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    /// Builds from `(coefficient, exponents)` pairs, combining duplicates.
    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True for the zero polynomial and for polynomials whose terms all have degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Indices of variables that occur with nonzero exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every used variable by its image. Images must all live over
    /// `target_vars`; variables that do not occur need no image.
    pub fn substitute(&self, images: &BTreeMap<String, MultiPoly>, target_vars: &[String]) -> Result<Self> {
        let used = self.used_vars();
        let mut imgs: Vec<Option<&MultiPoly>> = vec![None; self.vars.len()];
        for &i in &used {
            let img = images
                .get(&self.vars[i])
                .ok_or_else(|| CkfError::MissingImage(self.vars[i].clone()))?;
            if img.vars != target_vars {
                return Err(CkfError::VariableMismatch(format!(
                    "image of {} is over {:?}, expected {:?}",
                    self.vars[i], img.vars, target_vars
                )));
            }
            imgs[i] = Some(img);
        }
        // power cache per variable
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.vars.len()];
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = imgs[i].expect("used variable has image");
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Self::one(target_vars));
                }
                while cache.len() <= k as usize {
                    let next = cache.last().expect("nonempty") * img;
                    cache.push(next);
                }
                term = &term * &cache[k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Same polynomial viewed over a larger variable list containing all of
    /// this polynomial's variables by name.
    pub fn embed(&self, target_vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target_vars
                    .iter()
                    .position(|t| t == v)
                    .ok_or_else(|| CkfError::VariableMismatch(format!("{v} missing from target")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    fn check_same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variable lists");
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&q(-1))
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_vars(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            let cs = rational_to_string(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(m) => ("-", m.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// Variable list helper: `names("x", 3)` = `["x1", "x2", "x3"]`.
pub fn indexed_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn images(pairs: Vec<(&str, MultiPoly)>) -> BTreeMap<String, MultiPoly> {
        pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn substitute_square_plus_zero() {
        let xy = vars(&["x", "y"]);
        let t = vars(&["t"]);
        let p = &MultiPoly::var(&xy, 0).pow(2) + &MultiPoly::var(&xy, 1);
        let r = p
            .substitute(&images(vec![("x", MultiPoly::var(&t, 0)), ("y", MultiPoly::zero(&t))]), &t)
            .unwrap();
        assert_eq!(r, MultiPoly::var(&t, 0).pow(2));
    }

    #[test]
    fn difference_of_squares() {
        let xy = vars(&["x", "y"]);
        let uv = vars(&["u", "v"]);
        let u = MultiPoly::var(&uv, 0);
        let v = MultiPoly::var(&uv, 1);
        let p = &MultiPoly::var(&xy, 0) * &MultiPoly::var(&xy, 1);
        let r = p.substitute(&images(vec![("x", &u + &v), ("y", &u - &v)]), &uv).unwrap();
        assert_eq!(r, &u.pow(2) - &v.pow(2));
    }

    #[test]
    fn e2_restricts_to_e2() {
        // oracle: e2(x1,x2,x3) = x1x2 + x1x3 + x2x3 expanded by hand
        let x = indexed_vars("x", 3);
        let y = indexed_vars("x", 2);
        let e2_3 = MultiPoly::from_terms(
            &x,
            vec![(q(1), vec![1, 1, 0]), (q(1), vec![1, 0, 1]), (q(1), vec![0, 1, 1])],
        );
        let imgs = images(vec![
            ("x1", MultiPoly::var(&y, 0)),
            ("x2", MultiPoly::var(&y, 1)),
            ("x3", MultiPoly::zero(&y)),
        ]);
        let r = e2_3.substitute(&imgs, &y).unwrap();
        assert_eq!(r, MultiPoly::from_terms(&y, vec![(q(1), vec![1, 1])]));
    }

    #[test]
    fn missing_image_is_an_error() {
        let xy = vars(&["x", "y"]);
        let p = MultiPoly::var(&xy, 1);
        let err = p.substitute(&BTreeMap::new(), &xy).unwrap_err();
        assert!(matches!(err, CkfError::MissingImage(v) if v == "y"));
    }

    fn arb_poly(vs: Vec<String>) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((-3i64..=3, proptest::collection::vec(0u32..3, 2)), 0..5)
            .prop_map(move |ts| MultiPoly::from_terms(&vs, ts.into_iter().map(|(c, e)| (q(c), e))))
    }

    proptest! {
        #[test]
        fn substitution_is_a_ring_homomorphism(
            a in arb_poly(vars(&["x", "y"])),
            b in arb_poly(vars(&["x", "y"])),
            ix in arb_poly(vars(&["u", "v"])),
            iy in arb_poly(vars(&["u", "v"])),
        ) {
            let t = vars(&["u", "v"]);
            let imgs = images(vec![("x", ix), ("y", iy)]);
            let s = |p: &MultiPoly| p.substitute(&imgs, &t).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        }

        #[test]
        fn identity_substitution_is_verbatim(a in arb_poly(vars(&["x", "y"]))) {
            let xy = vars(&["x", "y"]);
            let imgs = images(vec![("x", MultiPoly::var(&xy, 0)), ("y", MultiPoly::var(&xy, 1))]);
            prop_assert_eq!(a.substitute(&imgs, &xy).unwrap(), a);
        }
    }
}
