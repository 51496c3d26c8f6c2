//! Principle checkers for Class and Rel, in exact arithmetic.

use rand::Rng;
use serde_json::{json, Value};

use super::{AuditConfig, Findings, Tally};
use crate::error::{Error, Result};
use crate::kernels::{complement, is_kernel, kernel, verify_kernel_universal, KernelArrow};
use crate::matcat::Matrix;
use crate::random::SeededRng;
use crate::scalars::{NonNegRational, Tolerance};
use crate::theories::{
    enumerate_relations, nonzero_count, plain_discard, plain_is_causal_state, plain_is_pure,
    plain_marginal, plain_product_factor, pure_set_bruteforce, rel_dilations,
    rel_is_pure_bruteforce, rel_kernel_bruteforce, sample_plain, split_dilation, PlainScalar,
    TheoryHandle, TheoryKind, TheoryMorphism, BRUTEFORCE_MAX_DIM,
};

const EXACT: Tolerance = Tolerance { abs: 0.0, rel: 0.0 };

fn wrap<S: PlainScalar>(m: &Matrix<S>) -> TheoryMorphism {
    let v = m.to_json();
    TheoryMorphism::from_json(
        &json!({ "theory": theory_of::<S>().as_str(), "morphism": v }),
        &EXACT,
    )
    .expect("round trip of a plain matrix")
}

fn theory_of<S: PlainScalar>() -> TheoryKind {
    match S::RING {
        crate::scalars::RingId::Boolean => TheoryKind::Rel,
        _ => TheoryKind::Class,
    }
}

fn dim(rng: &mut SeededRng, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi.max(lo))
}

/// Every morphism of the small hom-sets in Rel, or random samples in Class.
fn morphisms<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Vec<Matrix<S>> {
    let mut out = Vec::new();
    if kind == TheoryKind::Rel {
        let top = cfg.max_dim.min(BRUTEFORCE_MAX_DIM);
        for a in 1..=top {
            for b in 1..=top {
                for f in enumerate_relations(a, b).expect("small hom-set") {
                    out.push(wrap_back::<S>(&f));
                }
            }
        }
    }
    for _ in 0..cfg.samples {
        let (a, b) = (dim(rng, 1, cfg.max_dim), dim(rng, 1, cfg.max_dim));
        out.push(sample_plain(rng, a, b));
    }
    out
}

/// A relation viewed in the scalar type of the caller (only used for Rel).
fn wrap_back<S: PlainScalar>(f: &Matrix<bool>) -> Matrix<S> {
    f.map(|&x| if x { S::one() } else { S::zero() })
}

fn impurity_witness<S: PlainScalar>(check: &str, f: &Matrix<S>) -> Value {
    json!({
        "kind": "no-purification",
        "check": check,
        "morphism": wrap(f).to_json(),
        "non_product_dilation": wrap(&split_dilation(f)).to_json(),
        "environment": 2,
    })
}

/// Pure dilations of a relation over environments of size at most 2,
/// decided from the definition.
fn rel_purifications(f: &Matrix<bool>) -> Vec<(Matrix<bool>, usize)> {
    (1..=2)
        .flat_map(|env| rel_dilations(f, env).into_iter().map(move |g| (g, env)))
        .filter(|(g, _)| rel_is_pure_bruteforce(g, 2))
        .collect()
}

pub(super) fn strong_purification<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Findings {
    let mut out = Findings::default();
    let mut characterization = Tally::new("pure-set-characterization");
    if kind == TheoryKind::Rel {
        let h = TheoryHandle::new(kind);
        let top = cfg.max_dim.min(BRUTEFORCE_MAX_DIM);
        for a in 0..=top {
            for b in 0..=top {
                let pure = pure_set_bruteforce(h, a, b).expect("small hom-set");
                let expected = enumerate_relations(a, b)
                    .expect("small hom-set")
                    .filter(plain_is_pure)
                    .count();
                characterization.exact(pure.len() == expected, || {
                    format!("pure set {a} -> {b} differs from the at-most-one-entry set")
                });
            }
        }
    } else {
        for _ in 0..cfg.samples {
            let (a, b) = (dim(rng, 1, cfg.max_dim), dim(rng, 1, cfg.max_dim));
            let f: Matrix<S> = sample_plain(rng, a, b);
            let g = split_dilation(&f);
            let product = plain_product_factor(&f, &g, 2).is_some();
            let marginal_ok = plain_marginal(&g, 2).is_ok_and(|m| m == f);
            characterization.exact(marginal_ok && product == plain_is_pure(&f), || {
                "split dilation disagrees with the entry count".into()
            });
        }
    }
    out.note("pure morphisms are those with at most one nonzero entry: the split dilation of any morphism with two or more entries is not of product form, and dilations of a single entry are products with a causal state");

    let mut causal = Tally::new("causal-pure-states");
    for n in 1..=cfg.max_dim {
        let e: Matrix<S> = Matrix::basis(n, 0);
        causal.exact(plain_is_causal_state(&e) && plain_is_pure(&e), || {
            format!("no causal pure state on {n}")
        });
    }

    let mut zero = Tally::new("zero-morphism-purification");
    let z: Matrix<S> = Matrix::zeros(2, 2);
    zero.exact(plain_is_pure(&z), || "zero morphism is not pure".into());

    let mut identities = Tally::new("identities-pure");
    for n in 1..=cfg.max_dim {
        let id: Matrix<S> = Matrix::identity(n);
        let pure = match kind {
            TheoryKind::Rel if n <= BRUTEFORCE_MAX_DIM => {
                rel_is_pure_bruteforce(&wrap_rel(&id), 2)
            }
            _ => plain_product_factor(&id, &split_dilation(&id), 2).is_some(),
        };
        identities.exact(pure, || format!("id_{n} has a dilation that is not a product"));
        if !pure && n == 2 {
            out.witness(impurity_witness("identities-pure", &id));
        }
    }

    let mut exists = Tally::new("purification-exists");
    let mut witnessed = false;
    for f in morphisms::<S>(kind, cfg, rng) {
        let has = if kind == TheoryKind::Rel && f.rows().max(f.cols()) <= BRUTEFORCE_MAX_DIM {
            !rel_purifications(&wrap_rel(&f)).is_empty()
        } else {
            // Every dilation of f has f as marginal, hence ≥ 2 entries when f
            // does, hence a non-product split dilation.
            nonzero_count(&f) <= 1
        };
        exists.exact(has, || "a morphism has no pure dilation".into());
        if !has && !witnessed {
            out.witness(impurity_witness("purification-exists", &f));
            witnessed = true;
        }
    }
    if kind == TheoryKind::Rel {
        out.note("Rel hom-sets up to dimension 2 enumerated exhaustively, environments up to 2 elements");
    }
    for t in [characterization, causal, zero, identities, exists] {
        out.push(t);
    }
    out
}

fn wrap_rel<S: PlainScalar>(m: &Matrix<S>) -> Matrix<bool> {
    m.map(|x| !x.is_zero_within(&EXACT))
}

/// Inclusion-preserving stochastic mixing inside each block of `K ⊕ K⊥`.
fn block_mixer<S: PlainScalar>(
    rng: &mut SeededRng,
    k: &KernelArrow<S>,
    kc: &KernelArrow<S>,
) -> Matrix<S> {
    let n = k.ambient_dim();
    let block = |m: &Matrix<S>, i: usize| (0..m.cols()).find(|&c| !m.get(i, c).is_zero_within(&EXACT));
    let in_k: Vec<bool> = (0..n).map(|i| block(k.arrow(), i).is_some()).collect();
    let _ = kc;
    let mut p = Matrix::zeros(n, n);
    for col in 0..n {
        let members: Vec<usize> = (0..n).filter(|&r| in_k[r] == in_k[col]).collect();
        let target = members[rng.random_range(0..members.len())];
        if S::RING == crate::scalars::RingId::Boolean {
            p.set(target, col, S::one());
            let extra = members[rng.random_range(0..members.len())];
            p.set(extra, col, S::one());
        } else {
            let half = S::one().quotient(&S::from_nat(2)).expect("2 is invertible");
            let other = members[rng.random_range(0..members.len())];
            p.set(target, col, p.get(target, col).add(&half));
            p.set(other, col, p.get(other, col).add(&half));
        }
    }
    p
}

pub(super) fn kernels<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Findings {
    let mut out = Findings::default();
    let mut formula = Tally::new("kernel-formula");
    let mut brute = Tally::new("kernel-matches-bruteforce");
    let mut universal = Tally::new("kernel-universal-property");
    let mut identity = Tally::new("causal-complement-identity");
    let mut totality = Tally::new("totality-spot-check");

    for f in morphisms::<S>(kind, cfg, rng) {
        let a = f.cols();
        let k = kernel(&f, &EXACT);
        let annihilated = f.dot(k.arrow()).is_zero(&EXACT);
        formula.exact(annihilated && k.arrow().is_isometry(&EXACT), || {
            "kernel is not an annihilated isometry".into()
        });

        if kind == TheoryKind::Rel && a <= BRUTEFORCE_MAX_DIM + 1 {
            let rel = wrap_rel(&f);
            let oracle = rel_kernel_bruteforce(&rel).ok().flatten();
            brute.exact(oracle.as_ref() == Some(&wrap_rel(k.arrow())), || {
                "formula kernel differs from the brute-force kernel".into()
            });
            let probes: Vec<Matrix<S>> = (1..=2)
                .flat_map(|c| enumerate_relations(c, a).expect("small"))
                .map(|g| wrap_back(&g))
                .collect();
            universal.exact(verify_kernel_universal(&f, &k, &probes, &EXACT), || {
                "an annihilated relation does not factor".into()
            });
        } else {
            let c = dim(rng, 1, 2);
            let probe: Matrix<S> = k.arrow().dot(&sample_plain(rng, c, k.source_dim()));
            universal.exact(verify_kernel_universal(&f, &k, &[probe], &EXACT), || {
                "a probe does not factor through the kernel".into()
            });
        }

        let kc = complement(&k, &EXACT);
        let d = plain_discard::<S>(k.source_dim()).dot(&k.arrow().dagger());
        let e = plain_discard::<S>(kc.source_dim()).dot(&kc.arrow().dagger());
        identity.exact(d.plus(&e) == plain_discard(a), || {
            "discard ∘ k† + discard ∘ k⊥† differs from discard".into()
        });

        let b = dim(rng, 1, cfg.max_dim);
        let g1: Matrix<S> = sample_plain(rng, b, a);
        let g2 = if rng.random_bool(0.5) {
            block_mixer(rng, &k, &kc).dot(&g1)
        } else {
            sample_plain(rng, b, a)
        };
        let hyp = d.dot(&g1) == d.dot(&g2) && e.dot(&g1) == e.dot(&g2);
        let disc = plain_discard::<S>(a);
        totality.exact(!hyp || disc.dot(&g1) == disc.dot(&g2), || {
            "effects agree but discarding does not".into()
        });
    }
    let mut out_checks = vec![formula, universal, identity, totality];
    if kind == TheoryKind::Rel {
        out_checks.insert(1, brute);
    }
    for t in out_checks {
        out.push(t);
    }
    out.note("kernels are coordinate inclusions of the zero columns; the causal complement identity is checked exactly");
    out
}

pub(super) fn pure_exclusion<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Findings {
    let _ = kind;
    let mut out = Findings::default();
    let mut witness = Tally::new("exclusion-witness");
    let mut state_kernel = Tally::new("causal-pure-state-is-kernel");
    let mut normalisation = Tally::new("normalisation");
    let mut trivial = Tally::new("trivial-object-skipped");
    let one: Matrix<S> = Matrix::basis(1, 0);
    trivial.exact(plain_discard::<S>(1) == Matrix::identity(1) && one == Matrix::identity(1), || {
        "dimension 1 is not trivial".into()
    });
    // Causal pure states are exactly the basis states.
    for n in 2..=cfg.max_dim {
        for i in 0..n {
            let psi: Matrix<S> = Matrix::basis(n, i);
            let k = kernel(&psi.dagger(), &EXACT);
            let e = plain_discard::<S>(k.source_dim()).dot(&k.arrow().dagger());
            let ok = !e.is_zero(&EXACT) && e.dot(&psi).is_zero(&EXACT);
            witness.exact(ok, || format!("no exclusion effect for e_{i} in {n}"));
            state_kernel.exact(is_kernel(&psi, &EXACT), || format!("e_{i} is not a kernel"));
        }
    }
    for s in 0..cfg.samples {
        let n = dim(rng, 1, cfg.max_dim);
        let rho: Matrix<S> = sample_plain(rng, 1, n);
        if rho.is_zero(&EXACT) {
            continue;
        }
        let r = S::sum(rho.entries());
        let sigma = rho.map(|x| x.quotient(&r).expect("nonzero total"));
        normalisation.exact(plain_is_causal_state(&sigma) && sigma.scale(&r) == rho, || {
            format!("state {s} does not normalise")
        });
    }
    for t in [trivial, witness, state_kernel, normalisation] {
        out.push(t);
    }
    out
}

/// An orthonormal pair of states of `n ≥ 2`: disjoint supports, unit norm.
fn orthonormal_pair<S: PlainScalar>(rng: &mut SeededRng, n: usize) -> (Matrix<S>, Matrix<S>) {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        idx.swap(i, rng.random_range(0..=i));
    }
    let (i, j) = (idx[0], idx[1]);
    let mut v0: Matrix<S> = Matrix::basis(n, i);
    let v1: Matrix<S> = Matrix::basis(n, j);
    if n >= 3 && rng.random_bool(0.5) {
        let k = idx[2];
        v0 = Matrix::zeros(n, 1);
        if S::RING == crate::scalars::RingId::Boolean {
            v0.set(i, 0, S::one());
            v0.set(k, 0, S::one());
        } else {
            let five = S::from_nat(5);
            v0.set(i, 0, S::from_nat(3).quotient(&five).expect("5 ≠ 0"));
            v0.set(k, 0, S::from_nat(4).quotient(&five).expect("5 ≠ 0"));
        }
    }
    (v0, v1)
}

pub(super) fn conditioning<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Findings {
    let _ = kind;
    let mut out = Findings::default();
    let mut orthonormal = Tally::new("orthonormal-pairs");
    let mut cond = Tally::new("conditioning");
    let mut constant = Tally::new("conditioning-constant");
    let mut coarse = Tally::new("derived-coarse-grain-equals-sum");
    let n_max = cfg.max_dim.max(2);
    for s in 0..cfg.samples {
        let n = dim(rng, 2, n_max);
        let m = dim(rng, 1, cfg.max_dim);
        let (v0, v1) = orthonormal_pair::<S>(rng, n);
        let one = Matrix::identity(1);
        let ortho = v0.dagger().dot(&v0) == one
            && v1.dagger().dot(&v1) == one
            && v1.dagger().dot(&v0).is_zero(&EXACT);
        orthonormal.exact(ortho, || format!("pair {s} is not orthonormal"));

        let rho: Matrix<S> = sample_plain(rng, 1, m);
        let sigma = if s % 4 == 0 { rho.clone() } else { sample_plain(rng, 1, m) };
        let f = rho.dot(&v0.dagger()).plus(&sigma.dot(&v1.dagger()));
        let tally = if s % 4 == 0 { &mut constant } else { &mut cond };
        tally.exact(f.dot(&v0) == rho && f.dot(&v1) == sigma, || {
            format!("conditioning fails at sample {s}")
        });

        // f + g as the marginal of the map conditioned on a two-element system.
        let (a, b) = (dim(rng, 1, cfg.max_dim), dim(rng, 1, cfg.max_dim));
        let f: Matrix<S> = sample_plain(rng, a, b);
        let g: Matrix<S> = sample_plain(rng, a, b);
        let h = f
            .tensor(&Matrix::basis(2, 0))
            .plus(&g.tensor(&Matrix::basis(2, 1)));
        let branches = Matrix::<S>::identity(b)
            .tensor(&Matrix::basis(2, 0).dagger())
            .dot(&h)
            == f;
        let derived = plain_marginal(&h, 2).expect("environment of 2");
        coarse.exact(branches && derived == f.plus(&g), || {
            format!("derived coarse-graining differs at sample {s}")
        });
    }
    for t in [orthonormal, cond, constant, coarse] {
        out.push(t);
    }
    out
}

pub(super) fn alternate_axioms<S: PlainScalar>(
    kind: TheoryKind,
    cfg: &AuditConfig,
    rng: &mut SeededRng,
) -> Findings {
    let mut out = Findings::default();
    let mut kernel_sub = Tally::new("kernel-dagger-subcausal");
    let mut state_sub = Tally::new("pure-state-dagger-subcausal");
    let mut zero_sum = Tally::new("zero-sum-free");
    let mut cancel = Tally::new("cancellativity");
    let subcausal = |f: &Matrix<S>| {
        let d = plain_discard::<S>(f.rows()).dot(f);
        d.entries().iter().all(|x| x.le(&S::one()))
    };
    for f in morphisms::<S>(kind, cfg, rng) {
        let k = kernel(&f, &EXACT);
        kernel_sub.exact(subcausal(&k.arrow().dagger()), || "k† is not sub-causal".into());
    }
    for n in 1..=cfg.max_dim {
        for i in 0..n {
            let psi: Matrix<S> = Matrix::basis(n, i);
            state_sub.exact(subcausal(&psi.dagger()), || format!("e_{i}† is not sub-causal"));
        }
    }

    let mut triples: Vec<(Matrix<S>, Matrix<S>, Matrix<S>)> = Vec::new();
    if kind == TheoryKind::Rel {
        let all: Vec<Matrix<S>> = enumerate_relations(1, 1)
            .expect("tiny")
            .map(|m| wrap_back(&m))
            .collect();
        for f in &all {
            for g in &all {
                for h in &all {
                    triples.push((f.clone(), g.clone(), h.clone()));
                }
            }
        }
    }
    for s in 0..cfg.samples {
        let r: Matrix<S> = sample_plain(rng, 1, 1);
        let q: Matrix<S> = if s % 3 == 0 { Matrix::zeros(1, 1) } else { sample_plain(rng, 1, 1) };
        let sum_zero = r.plus(&q).is_zero(&EXACT);
        zero_sum.exact(!sum_zero || (r.is_zero(&EXACT) && q.is_zero(&EXACT)), || {
            format!("r + s = 0 with a nonzero summand at sample {s}")
        });

        let (a, b) = (dim(rng, 1, cfg.max_dim), dim(rng, 1, cfg.max_dim));
        let f: Matrix<S> = sample_plain(rng, a, b);
        let g: Matrix<S> = sample_plain(rng, a, b);
        let h = if s % 2 == 0 { g.clone() } else { sample_plain(rng, a, b) };
        triples.push((f, g, h));
    }
    for (f, g, h) in &triples {
        let hyp = f.plus(g) == f.plus(h);
        let ok = !hyp || g == h;
        cancel.exact(ok, || "f + g = f + h with g ≠ h".into());
        if !ok && out.witnesses.is_empty() {
            out.witness(json!({
                "kind": "non-cancellative",
                "f": wrap(f).to_json(),
                "g": wrap(g).to_json(),
                "h": wrap(h).to_json(),
            }));
        }
    }
    for t in [kernel_sub, state_sub, zero_sum, cancel] {
        out.push(t);
    }
    out.note("zero-scalar law read as zero-sum-freeness of scalar addition");
    out
}

fn plain_of(m: &TheoryMorphism) -> Result<PlainWitness> {
    match m {
        TheoryMorphism::Class(x) => Ok(PlainWitness::Class(x.clone())),
        TheoryMorphism::Rel(x) => Ok(PlainWitness::Rel(x.clone())),
        other => Err(Error::WrongTheory {
            op: "replay_witness",
            expected: "class or rel",
            found: other.kind().as_str(),
        }),
    }
}

enum PlainWitness {
    Class(Matrix<NonNegRational>),
    Rel(Matrix<bool>),
}

fn field<'a>(w: &'a Value, key: &str) -> Result<&'a Value> {
    w.get(key)
        .ok_or_else(|| Error::Format(format!("witness lacks {key:?}")))
}

fn morphism_field(w: &Value, key: &str) -> Result<TheoryMorphism> {
    TheoryMorphism::from_json(field(w, key)?, &Tolerance::DEFAULT)
}

/// A morphism with no pure dilation: `f` has two or more entries and its
/// stored dilation is a genuine dilation that is not a product. For small
/// relations the absence of pure dilations is also re-enumerated.
fn replay_impure<S: PlainScalar>(f: &Matrix<S>, g: &Matrix<S>) -> bool {
    let dilation = plain_marginal(g, 2).is_ok_and(|m| m == *f);
    dilation && nonzero_count(f) >= 2 && plain_product_factor(f, g, 2).is_none()
}

pub(super) fn replay(w: &Value) -> Result<bool> {
    let kind = field(w, "kind")?.as_str().unwrap_or_default();
    match kind {
        "no-purification" => {
            let f = plain_of(&morphism_field(w, "morphism")?)?;
            let g = plain_of(&morphism_field(w, "non_product_dilation")?)?;
            Ok(match (f, g) {
                (PlainWitness::Class(f), PlainWitness::Class(g)) => replay_impure(&f, &g),
                (PlainWitness::Rel(f), PlainWitness::Rel(g)) => {
                    let small = f.rows().max(f.cols()) <= BRUTEFORCE_MAX_DIM;
                    replay_impure(&f, &g) && (!small || rel_purifications(&f).is_empty())
                }
                _ => false,
            })
        }
        "non-cancellative" => {
            let parts = ["f", "g", "h"]
                .iter()
                .map(|k| morphism_field(w, k).and_then(|m| plain_of(&m)))
                .collect::<Result<Vec<_>>>()?;
            Ok(match &parts[..] {
                [PlainWitness::Rel(f), PlainWitness::Rel(g), PlainWitness::Rel(h)] => {
                    f.plus(g) == f.plus(h) && g != h
                }
                [PlainWitness::Class(f), PlainWitness::Class(g), PlainWitness::Class(h)] => {
                    f.plus(g) == f.plus(h) && g != h
                }
                _ => false,
            })
        }
        other => Err(Error::Format(format!("witness kind {other:?} cannot be replayed"))),
    }
}
