//! The four concrete theories behind one handle: quantum theory over complex
//! and real amplitudes (CP maps), classical probability (`ℚ⁺` matrices) and
//! possibilistic relations (Boolean matrices).
//!
//! In the plain matrix theories discarding is the all-ones row, dilations
//! of `f : A → B` are `g : A → B ⊗ C` with `(id_B ⊗ discard_C) ∘ g = f`, and
//! a morphism is pure exactly when it has at most one nonzero entry.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use crate::cpm::CPMorphism;
use crate::error::{Error, Result};
use crate::kernels::KernelRing;
use crate::matcat::{Matrix, MatrixPositivity};
use crate::random::SeededRng;
use crate::scalars::{NonNegRational, RingId, Semiring, Tolerance};

/// Largest Rel hom-set [`enumerate_morphisms`] will walk.
pub const MAX_ENUMERATION: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoryKind {
    QuantC,
    QuantR,
    Class,
    Rel,
}

impl TheoryKind {
    pub const ALL: [TheoryKind; 4] = [
        TheoryKind::QuantC,
        TheoryKind::QuantR,
        TheoryKind::Class,
        TheoryKind::Rel,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoryKind::QuantC => "quant-c",
            TheoryKind::QuantR => "quant-r",
            TheoryKind::Class => "class",
            TheoryKind::Rel => "rel",
        }
    }

    pub fn ring(self) -> RingId {
        match self {
            TheoryKind::QuantC => RingId::Complex64,
            TheoryKind::QuantR => RingId::Real64,
            TheoryKind::Class => RingId::NonNegRational,
            TheoryKind::Rel => RingId::Boolean,
        }
    }

    pub fn mode(self) -> MorphismMode {
        match self {
            TheoryKind::QuantC | TheoryKind::QuantR => MorphismMode::Cpm,
            TheoryKind::Class | TheoryKind::Rel => MorphismMode::PlainMatrix,
        }
    }

    pub fn is_quantum(self) -> bool {
        self.mode() == MorphismMode::Cpm
    }
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoryKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownTheory(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismMode {
    Cpm,
    PlainMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoryHandle {
    pub kind: TheoryKind,
    pub ring: RingId,
    pub mode: MorphismMode,
}

impl TheoryHandle {
    pub fn new(kind: TheoryKind) -> Self {
        TheoryHandle {
            kind,
            ring: kind.ring(),
            mode: kind.mode(),
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Ok(Self::new(id.parse()?))
    }

    fn require(&self, op: &'static str, kind: TheoryKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongTheory {
                op,
                expected: kind.as_str(),
                found: self.kind.as_str(),
            })
        }
    }
}

impl From<TheoryKind> for TheoryHandle {
    fn from(kind: TheoryKind) -> Self {
        TheoryHandle::new(kind)
    }
}

macro_rules! binary {
    ($lhs:expr, $rhs:expr, |$a:ident, $b:ident| $body:expr) => {
        match ($lhs, $rhs) {
            (TheoryMorphism::QuantC($a), TheoryMorphism::QuantC($b)) => {
                Ok(TheoryMorphism::QuantC($body))
            }
            (TheoryMorphism::QuantR($a), TheoryMorphism::QuantR($b)) => {
                Ok(TheoryMorphism::QuantR($body))
            }
            (TheoryMorphism::Class($a), TheoryMorphism::Class($b)) => {
                Ok(TheoryMorphism::Class($body))
            }
            (TheoryMorphism::Rel($a), TheoryMorphism::Rel($b)) => Ok(TheoryMorphism::Rel($body)),
            (l, r) => Err(Error::MixedRings {
                expected: l.kind().ring(),
                found: r.kind().ring(),
            }),
        }
    };
}

#[derive(Debug, Clone)]
pub enum TheoryMorphism {
    QuantC(CPMorphism<Complex64>),
    QuantR(CPMorphism<f64>),
    Class(Matrix<NonNegRational>),
    Rel(Matrix<bool>),
}

impl TheoryMorphism {
    pub fn kind(&self) -> TheoryKind {
        match self {
            TheoryMorphism::QuantC(_) => TheoryKind::QuantC,
            TheoryMorphism::QuantR(_) => TheoryKind::QuantR,
            TheoryMorphism::Class(_) => TheoryKind::Class,
            TheoryMorphism::Rel(_) => TheoryKind::Rel,
        }
    }

    pub fn in_dim(&self) -> usize {
        match self {
            TheoryMorphism::QuantC(f) => f.in_dim(),
            TheoryMorphism::QuantR(f) => f.in_dim(),
            TheoryMorphism::Class(m) => m.cols(),
            TheoryMorphism::Rel(m) => m.cols(),
        }
    }

    pub fn out_dim(&self) -> usize {
        match self {
            TheoryMorphism::QuantC(f) => f.out_dim(),
            TheoryMorphism::QuantR(f) => f.out_dim(),
            TheoryMorphism::Class(m) => m.rows(),
            TheoryMorphism::Rel(m) => m.rows(),
        }
    }

    pub fn identity(handle: TheoryHandle, n: usize) -> Self {
        match handle.kind {
            TheoryKind::QuantC => TheoryMorphism::QuantC(CPMorphism::identity(n)),
            TheoryKind::QuantR => TheoryMorphism::QuantR(CPMorphism::identity(n)),
            TheoryKind::Class => TheoryMorphism::Class(Matrix::identity(n)),
            TheoryKind::Rel => TheoryMorphism::Rel(Matrix::identity(n)),
        }
    }

    pub fn discard(handle: TheoryHandle, n: usize) -> Self {
        match handle.kind {
            TheoryKind::QuantC => TheoryMorphism::QuantC(CPMorphism::discard(n)),
            TheoryKind::QuantR => TheoryMorphism::QuantR(CPMorphism::discard(n)),
            TheoryKind::Class => TheoryMorphism::Class(plain_discard(n)),
            TheoryKind::Rel => TheoryMorphism::Rel(plain_discard(n)),
        }
    }

    pub fn cup(handle: TheoryHandle, n: usize) -> Self {
        match handle.kind {
            TheoryKind::QuantC => TheoryMorphism::QuantC(CPMorphism::cup(n)),
            TheoryKind::QuantR => TheoryMorphism::QuantR(CPMorphism::cup(n)),
            TheoryKind::Class => TheoryMorphism::Class(crate::matcat::cup(n)),
            TheoryKind::Rel => TheoryMorphism::Rel(crate::matcat::cup(n)),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &TheoryMorphism) -> Result<Self> {
        binary!(self, f, |a, b| a.compose(b)?)
    }

    pub fn tensor(&self, g: &TheoryMorphism) -> Result<Self> {
        binary!(self, g, |a, b| a.tensor(b))
    }

    pub fn dagger(&self) -> Self {
        match self {
            TheoryMorphism::QuantC(f) => TheoryMorphism::QuantC(f.dagger()),
            TheoryMorphism::QuantR(f) => TheoryMorphism::QuantR(f.dagger()),
            TheoryMorphism::Class(m) => TheoryMorphism::Class(m.dagger()),
            TheoryMorphism::Rel(m) => TheoryMorphism::Rel(m.dagger()),
        }
    }

    /// Coarse-graining: CP sum, matrix sum, or union of relations.
    pub fn add(&self, g: &TheoryMorphism) -> Result<Self> {
        binary!(self, g, |a, b| a.add(b)?)
    }

    /// Equality of canonical forms; exact in Class and Rel.
    pub fn approx_eq(&self, other: &TheoryMorphism, tol: &Tolerance) -> bool {
        match (self, other) {
            (TheoryMorphism::QuantC(a), TheoryMorphism::QuantC(b)) => a.close_to(b, tol),
            (TheoryMorphism::QuantR(a), TheoryMorphism::QuantR(b)) => a.close_to(b, tol),
            (TheoryMorphism::Class(a), TheoryMorphism::Class(b)) => a == b,
            (TheoryMorphism::Rel(a), TheoryMorphism::Rel(b)) => a == b,
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let payload = match self {
            TheoryMorphism::QuantC(f) => f.to_json(),
            TheoryMorphism::QuantR(f) => f.to_json(),
            TheoryMorphism::Class(m) => m.to_json(),
            TheoryMorphism::Rel(m) => m.to_json(),
        };
        json!({ "theory": self.kind().as_str(), "morphism": payload })
    }

    pub fn from_json(value: &Value, tol: &Tolerance) -> Result<Self> {
        let theory = value
            .get("theory")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format("missing \"theory\"".into()))?;
        let payload = value
            .get("morphism")
            .ok_or_else(|| Error::Format("missing \"morphism\"".into()))?;
        Ok(match theory.parse::<TheoryKind>()? {
            TheoryKind::QuantC => TheoryMorphism::QuantC(CPMorphism::from_json(payload, tol)?),
            TheoryKind::QuantR => TheoryMorphism::QuantR(CPMorphism::from_json(payload, tol)?),
            TheoryKind::Class => TheoryMorphism::Class(Matrix::from_json(payload)?),
            TheoryKind::Rel => TheoryMorphism::Rel(Matrix::from_json(payload)?),
        })
    }
}

/// Scalars of the plain matrix theories: exact, zero-sum-free, with
/// coordinate kernels.
pub trait PlainScalar: KernelRing + MatrixPositivity {
    /// A sample from the theory's entry distribution.
    fn sample(rng: &mut SeededRng) -> Self;
    /// `self / d` for nonzero `d`, when the quotient exists.
    fn quotient(&self, d: &Self) -> Option<Self>;
    /// The order in which effects are compared with discarding.
    fn le(&self, other: &Self) -> bool;
}

impl PlainScalar for bool {
    fn sample(rng: &mut SeededRng) -> Self {
        rng.random_bool(0.5)
    }

    fn quotient(&self, d: &Self) -> Option<Self> {
        d.then_some(*self)
    }

    fn le(&self, other: &Self) -> bool {
        !*self || *other
    }
}

/// Entries are drawn from `{0, 1/2, 1, 3/2, 2}`.
impl PlainScalar for NonNegRational {
    fn sample(rng: &mut SeededRng) -> Self {
        NonNegRational::from_ratio(rng.random_range(0..=4), 2)
    }

    fn quotient(&self, d: &Self) -> Option<Self> {
        if d.is_zero_within(&Tolerance::DEFAULT) {
            return None;
        }
        NonNegRational::new(self.as_rational() / d.as_rational()).ok()
    }

    fn le(&self, other: &Self) -> bool {
        self.as_rational() <= other.as_rational()
    }
}

pub fn sample_morphism(
    handle: TheoryHandle,
    in_dim: usize,
    out_dim: usize,
    rng: &mut SeededRng,
) -> TheoryMorphism {
    match handle.kind {
        TheoryKind::QuantC => {
            let k = rng.random_range(1..=4);
            TheoryMorphism::QuantC(CPMorphism::random(rng, in_dim, out_dim, k))
        }
        TheoryKind::QuantR => {
            let k = rng.random_range(1..=4);
            TheoryMorphism::QuantR(CPMorphism::random(rng, in_dim, out_dim, k))
        }
        TheoryKind::Class => TheoryMorphism::Class(sample_plain(rng, in_dim, out_dim)),
        TheoryKind::Rel => TheoryMorphism::Rel(sample_plain(rng, in_dim, out_dim)),
    }
}

pub fn sample_plain<S: PlainScalar>(rng: &mut SeededRng, in_dim: usize, out_dim: usize) -> Matrix<S> {
    Matrix::from_fn(out_dim, in_dim, |_, _| S::sample(rng))
}

/// Walks every relation `in_dim → out_dim` once, in binary counting order
/// over the row-major entries.
pub fn enumerate_relations(
    in_dim: usize,
    out_dim: usize,
) -> Result<impl Iterator<Item = Matrix<bool>>> {
    let cells = in_dim * out_dim;
    if cells > 16 {
        return Err(Error::TooLarge {
            detail: format!("2^{cells} relations {in_dim} -> {out_dim} exceed {MAX_ENUMERATION}"),
        });
    }
    Ok((0..1u64 << cells).map(move |bits| {
        Matrix::from_fn(out_dim, in_dim, |i, j| bits >> (i * in_dim + j) & 1 == 1)
    }))
}

pub fn enumerate_morphisms(
    handle: TheoryHandle,
    in_dim: usize,
    out_dim: usize,
) -> Result<impl Iterator<Item = TheoryMorphism>> {
    handle.require("enumerate_morphisms", TheoryKind::Rel)?;
    Ok(enumerate_relations(in_dim, out_dim)?.map(TheoryMorphism::Rel))
}

/// The all-ones row `n → 1`.
pub fn plain_discard<S: Semiring>(n: usize) -> Matrix<S> {
    Matrix::from_fn(1, n, |_, _| S::one())
}

/// `(id_B ⊗ discard_C) ∘ g` for `g : A → B ⊗ C` with `|C| = env`.
pub fn plain_marginal<S: Semiring>(g: &Matrix<S>, env: usize) -> Result<Matrix<S>> {
    if env == 0 || !g.rows().is_multiple_of(env) {
        return Err(Error::dims(
            "plain_marginal",
            format!("{} rows do not split over an environment of {env}", g.rows()),
        ));
    }
    let b = g.rows() / env;
    Matrix::<S>::identity(b).tensor(&plain_discard(env)).compose(g)
}

/// Whether the state `ρ` satisfies `discard ∘ ρ = 1`.
pub fn plain_is_causal_state<S: Semiring>(rho: &Matrix<S>) -> bool {
    rho.cols() == 1 && S::sum(rho.entries()) == S::one()
}

pub fn nonzero_count<S: Semiring>(f: &Matrix<S>) -> usize {
    let tol = Tolerance::DEFAULT;
    f.entries().iter().filter(|x| !x.is_zero_within(&tol)).count()
}

/// Purity in Class and Rel: at most one nonzero entry.
pub fn plain_is_pure<S: Semiring>(f: &Matrix<S>) -> bool {
    nonzero_count(f) <= 1
}

/// A dilation over a two-element environment that files the first nonzero
/// entry under `c = 0` and every other entry under `c = 1`. It has the form
/// `f ⊗ ρ` only when `f` has at most one nonzero entry.
pub fn split_dilation<S: Semiring>(f: &Matrix<S>) -> Matrix<S> {
    let tol = Tolerance::DEFAULT;
    let first = f.entries().iter().position(|x| !x.is_zero_within(&tol));
    let mut g = Matrix::zeros(f.rows() * 2, f.cols());
    for b in 0..f.rows() {
        for a in 0..f.cols() {
            let c = usize::from(Some(b * f.cols() + a) != first);
            g.set(b * 2 + c, a, f.get(b, a).clone());
        }
    }
    g
}

/// The causal state `ρ` with `g = f ⊗ ρ`, if there is one.
pub fn plain_product_factor<S: PlainScalar>(
    f: &Matrix<S>,
    g: &Matrix<S>,
    env: usize,
) -> Option<Matrix<S>> {
    if env == 0 || g.shape() != (f.rows() * env, f.cols()) {
        return None;
    }
    let tol = Tolerance::DEFAULT;
    let rho = match f.entries().iter().position(|x| !x.is_zero_within(&tol)) {
        None => Matrix::basis(env, 0),
        Some(idx) => {
            let (b, a) = (idx / f.cols(), idx % f.cols());
            let pivot = f.get(b, a);
            let entries = (0..env)
                .map(|c| g.get(b * env + c, a).quotient(pivot))
                .collect::<Option<Vec<S>>>()?;
            Matrix::column(entries)
        }
    };
    (plain_is_causal_state(&rho) && f.tensor(&rho) == *g).then_some(rho)
}

/// Every `g : A → B ⊗ C` with `|C| = env` whose marginal is the relation `f`.
pub fn rel_dilations(f: &Matrix<bool>, env: usize) -> Vec<Matrix<bool>> {
    let cells: Vec<(usize, usize)> = (0..f.rows())
        .flat_map(|b| (0..f.cols()).map(move |a| (b, a)))
        .filter(|&(b, a)| *f.get(b, a))
        .collect();
    let choices = (1u64 << env) - 1;
    let total = choices.pow(cells.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut g = Matrix::zeros(f.rows() * env, f.cols());
            for &(b, a) in &cells {
                let subset = code % choices + 1;
                code /= choices;
                for c in 0..env {
                    if subset >> c & 1 == 1 {
                        g.set(b * env + c, a, true);
                    }
                }
            }
            g
        })
        .collect()
}

/// Purity of a relation decided from the definition: `f = 0`, or every
/// dilation over an environment of at most `max_env` elements is `f ⊗ ρ`
/// for a causal `ρ`.
pub fn rel_is_pure_bruteforce(f: &Matrix<bool>, max_env: usize) -> bool {
    if f.is_zero(&Tolerance::DEFAULT) {
        return true;
    }
    (1..=max_env).all(|env| {
        rel_dilations(f, env)
            .iter()
            .all(|g| plain_product_factor(f, g, env).is_some())
    })
}

/// The kernel of a relation found from its universal property alone: among
/// all subsets `K ⊆ A` whose inclusion `f` annihilates, the one containing
/// every other. `None` if no such subset exists.
pub fn rel_kernel_bruteforce(f: &Matrix<bool>) -> Result<Option<Matrix<bool>>> {
    let n = f.cols();
    if n > 16 {
        return Err(Error::TooLarge {
            detail: format!("2^{n} subsets"),
        });
    }
    let inclusion = |mask: u32| {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        Matrix::from_fn(n, members.len(), |r, c| members[c] == r)
    };
    let annihilated: Vec<u32> = (0..1u32 << n)
        .filter(|&mask| f.dot(&inclusion(mask)).is_zero(&Tolerance::DEFAULT))
        .collect();
    Ok(annihilated
        .iter()
        .find(|&&top| annihilated.iter().all(|&m| m & !top == 0))
        .map(|&top| inclusion(top)))
}

/// Largest dimension accepted by [`pure_set_bruteforce`].
pub const BRUTEFORCE_MAX_DIM: usize = 2;

/// The pure relations `in_dim → out_dim`, decided from the definition over
/// environments of size at most 2.
pub fn pure_set_bruteforce(
    handle: TheoryHandle,
    in_dim: usize,
    out_dim: usize,
) -> Result<Vec<TheoryMorphism>> {
    handle.require("pure_set_bruteforce", TheoryKind::Rel)?;
    if in_dim.max(out_dim) > BRUTEFORCE_MAX_DIM {
        return Err(Error::TooLarge {
            detail: format!("pure-set oracle is limited to dimension {BRUTEFORCE_MAX_DIM}"),
        });
    }
    Ok(enumerate_relations(in_dim, out_dim)?
        .filter(|f| rel_is_pure_bruteforce(f, 2))
        .map(TheoryMorphism::Rel)
        .collect())
}
