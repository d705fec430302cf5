use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::coeff::CoeffPoly;
use super::context::{ShiftContext, ShiftVar};
use super::monomial::Monomial;
use super::PolyError;

/// Total degree in the averaging variables. The zero polynomial gets its own
/// value ordered below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    ZeroPoly,
    Of(u32),
}

impl Degree {
    pub fn value(self) -> Option<u32> {
        match self {
            Degree::ZeroPoly => None,
            Degree::Of(d) => Some(d),
        }
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn or_zero(self) -> u32 {
        self.value().unwrap_or(0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::ZeroPoly => write!(f, "ZERO"),
            Degree::Of(d) => write!(f, "{}", d),
        }
    }
}

/// One coordinate of a shift `u -> u + s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftEntry {
    Int(BigInt),
    Formal(ShiftVar),
}

impl ShiftEntry {
    pub fn int(x: i64) -> Self {
        ShiftEntry::Int(BigInt::from(x))
    }
}

/// Integer values for shift variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftAssignment(BTreeMap<ShiftVar, BigInt>);

impl ShiftAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, var: ShiftVar, value: impl Into<BigInt>) -> &mut Self {
        self.0.insert(var, value.into());
        self
    }

    pub fn get(&self, var: &ShiftVar) -> Option<&BigInt> {
        self.0.get(var)
    }

    /// Values for every coordinate of pair `pair`.
    pub fn with_pair(mut self, pair: u32, v: &[i64], w: &[i64]) -> Self {
        for (k, &x) in v.iter().enumerate() {
            self.0.insert(ShiftVar::v(pair, k as u32), BigInt::from(x));
        }
        for (k, &x) in w.iter().enumerate() {
            self.0.insert(ShiftVar::w(pair, k as u32), BigInt::from(x));
        }
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Polynomial in the averaging variables `u_1..u_d` whose coefficients are
/// exact integer polynomials in formal shift variables.
///
/// Equality and hashing ignore how many shift pairs the context has
/// allocated: a polynomial built before a pair was added is the same
/// polynomial afterwards.
#[derive(Clone, Debug)]
pub struct UPoly {
    ctx: ShiftContext,
    terms: BTreeMap<Monomial, CoeffPoly>,
}

impl PartialEq for UPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.dim() == other.ctx.dim() && self.terms == other.terms
    }
}

impl Eq for UPoly {}

impl Hash for UPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.dim().hash(state);
        self.terms.hash(state);
    }
}

impl PartialOrd for UPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UPoly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ctx.dim().cmp(&other.ctx.dim()).then_with(|| self.terms.cmp(&other.terms))
    }
}

impl UPoly {
    pub fn zero(ctx: ShiftContext) -> Self {
        UPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: ShiftContext, c: impl Into<BigInt>) -> Self {
        Self::from_coeff(ctx, CoeffPoly::constant(c))
    }

    pub fn from_coeff(ctx: ShiftContext, c: CoeffPoly) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The coordinate `u_k` (0-based).
    pub fn var(ctx: ShiftContext, k: usize) -> Self {
        assert!(k < ctx.dim(), "u-variable index out of range");
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::var(k, 1), CoeffPoly::constant(1));
        p
    }

    /// The formal shift variable `var`, as a u-constant.
    pub fn shift_var(ctx: ShiftContext, var: ShiftVar) -> Result<Self, PolyError> {
        if !ctx.contains(&var) {
            return Err(PolyError::UnknownShift(var));
        }
        Ok(Self::from_coeff(ctx, CoeffPoly::var(var.index(ctx.dim()))))
    }

    /// Builds `Σ c · u^e` from integer terms given as full exponent vectors.
    pub fn from_int_terms(ctx: ShiftContext, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(ctx);
        for &(c, e) in terms {
            assert!(e.len() <= ctx.dim(), "exponent vector longer than d");
            p.add_term(Monomial::from_exponents(e.iter().copied()), CoeffPoly::constant(c));
        }
        p
    }

    /// Univariate convenience: coefficients of `u^0, u^1, ...` for d = 1.
    pub fn univariate(ctx: ShiftContext, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(ctx);
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(0, e as u32), CoeffPoly::constant(c));
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: CoeffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> ShiftContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.ctx.dim()
    }

    /// Same polynomial viewed in a context with more shift pairs.
    pub fn with_context(mut self, ctx: ShiftContext) -> Result<Self, PolyError> {
        self.ctx = self.ctx.join(&ctx)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order of the u-monomial.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn u_degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::ZeroPoly,
            Some(m) => Degree::Of(m.degree()),
        }
    }

    /// Sum of the terms of total u-degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> UPoly {
        UPoly {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Highest-degree homogeneous part; two nonzero polynomials are
    /// equivalent exactly when these agree.
    pub fn leading_form(&self) -> UPoly {
        match self.u_degree() {
            Degree::ZeroPoly => self.clone(),
            Degree::Of(d) => self.homogeneous_part(d),
        }
    }

    /// Coefficient of `u^0`.
    pub fn constant_term(&self) -> CoeffPoly {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn without_constant_term(&self) -> UPoly {
        let mut p = self.clone();
        p.terms.remove(&Monomial::one());
        p
    }

    /// No shift variable occurs anywhere.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(CoeffPoly::is_constant)
    }

    pub fn shift_vars(&self) -> BTreeSet<ShiftVar> {
        let d = self.ctx.dim();
        self.terms
            .values()
            .flat_map(|c| c.terms().flat_map(|(m, _)| m.support().map(|(s, _)| s)).collect::<Vec<_>>())
            .map(|s| ShiftVar::from_index(s, d))
            .collect()
    }

    pub fn try_add(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        let ctx = self.ctx.join(&other.ctx)?;
        let mut out = self.clone();
        out.ctx = ctx;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        let ctx = self.ctx.join(&other.ctx)?;
        let mut out = self.clone();
        out.ctx = ctx;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        let ctx = self.ctx.join(&other.ctx)?;
        let mut out = UPoly::zero(ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> UPoly {
        let k = k.into();
        let mut out = UPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(&k));
        }
        out
    }

    pub fn scale_coeff(&self, k: &CoeffPoly) -> UPoly {
        let mut out = UPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::constant(self.ctx, 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `u_k -> images[k]` for every coordinate. The images may
    /// live in a context of a different dimension; coefficients of `self`
    /// must then be integers, since shift-variable slots depend on `d`.
    pub fn compose(&self, images: &[UPoly]) -> Result<UPoly, PolyError> {
        if images.len() != self.ctx.dim() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.dim(), got: images.len() });
        }
        let target = match images.first() {
            Some(img) => img.ctx,
            None => unreachable!("d >= 1"),
        };
        let mut target = images.iter().try_fold(target, |acc, p| acc.join(&p.ctx))?;
        if target.dim() == self.ctx.dim() {
            target = target.join(&self.ctx)?;
        } else if !self.is_integral() {
            return Err(PolyError::ContextMismatch { left: self.ctx.dim(), right: target.dim() });
        }

        let max_exp: Vec<u32> =
            (0..self.ctx.dim()).map(|k| self.terms.keys().map(|m| m.exponent(k)).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<UPoly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &top)| {
                let img = img.clone().with_context(target).expect("joined above");
                let mut pw = vec![UPoly::constant(target, 1)];
                for e in 1..=top as usize {
                    let next = &pw[e - 1] * &img;
                    pw.push(next);
                }
                pw
            })
            .collect();

        let mut out = UPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = UPoly::from_coeff(target, c.clone());
            for (k, e) in m.support() {
                t = &t * &powers[k][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// `p(u + s)`, expanded exactly.
    pub fn shift_substitute(&self, s: &[ShiftEntry]) -> Result<UPoly, PolyError> {
        if s.len() != self.ctx.dim() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.dim(), got: s.len() });
        }
        let images = s
            .iter()
            .enumerate()
            .map(|(k, entry)| {
                let offset = match entry {
                    ShiftEntry::Int(x) => UPoly::constant(self.ctx, x.clone()),
                    ShiftEntry::Formal(var) => UPoly::shift_var(self.ctx, *var)?,
                };
                Ok(&UPoly::var(self.ctx, k) + &offset)
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        self.compose(&images)
    }

    /// Replaces every shift variable by its integer value.
    pub fn specialize(&self, assignment: &ShiftAssignment) -> Result<UPoly, PolyError> {
        let d = self.ctx.dim();
        let mut out = UPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            let value =
                c.evaluate(|slot| assignment.get(&ShiftVar::from_index(slot, d)).cloned()).map_err(|slots| {
                    PolyError::IncompleteAssignment {
                        missing: slots.into_iter().map(|s| ShiftVar::from_index(s, d)).collect(),
                    }
                })?;
            out.add_term(m.clone(), CoeffPoly::constant(value));
        }
        Ok(out)
    }

    /// Exact value at an integer point; fails if any shift variable remains.
    pub fn evaluate(&self, u: &[i64]) -> Result<BigInt, PolyError> {
        if u.len() != self.ctx.dim() {
            return Err(PolyError::ArityMismatch { expected: self.ctx.dim(), got: u.len() });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let c = c.as_integer().ok_or_else(|| PolyError::Unspecialized(self.shift_vars()))?;
            let mut t = c;
            for (k, e) in m.support() {
                t *= num_traits::pow(BigInt::from(u[k]), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Integer coefficients as `(coeff, exponents)` with exponent vectors of
    /// length d; `None` if shift variables remain.
    pub fn integer_terms(&self) -> Option<Vec<(BigInt, Vec<u32>)>> {
        let d = self.ctx.dim();
        self.terms.iter().map(|(m, c)| c.as_integer().map(|c| (c, m.padded(d)))).collect()
    }

    pub(crate) fn u_name(&self, k: usize) -> String {
        if self.ctx.dim() == 1 {
            "u".to_string()
        } else {
            format!("u{}", k + 1)
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a UPoly> for &'a UPoly {
            type Output = UPoly;
            /// Panics when the operands have different dimensions; use the
            /// `try_` form to get an error instead.
            fn $method(self, rhs: &'a UPoly) -> UPoly {
                self.$try(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<UPoly> for UPoly {
            type Output = UPoly;
            fn $method(self, rhs: UPoly) -> UPoly {
                (&self).$try(&rhs).expect("polynomial context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let d = self.ctx.dim();
        let shift_name = |slot: usize| ShiftVar::from_index(slot, d).to_string();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .support()
                .map(|(i, e)| if e == 1 { self.u_name(i) } else { format!("{}^{}", self.u_name(i), e) })
                .collect();
            let mono = mono.join("*");
            match c.as_integer() {
                Some(v) => {
                    let neg = v < BigInt::zero();
                    let mag = if neg { -v } else { v };
                    if k == 0 {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    if mono.is_empty() {
                        write!(f, "{}", mag)?;
                    } else if mag.is_one() {
                        write!(f, "{}", mono)?;
                    } else {
                        write!(f, "{}{}", mag, mono)?;
                    }
                }
                None => {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    struct Shown<'a>(&'a CoeffPoly, &'a dyn Fn(usize) -> String);
                    impl fmt::Display for Shown<'_> {
                        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                            self.0.fmt_with(f, self.1)
                        }
                    }
                    let shown = Shown(c, &shift_name);
                    if mono.is_empty() {
                        write!(f, "({})", shown)?;
                    } else {
                        write!(f, "({}){}", shown, mono)?;
                    }
                }
            }
        }
        Ok(())
    }
}
