//! Exact (K², K·ω) bookkeeping through blow-up, blow-down, fiber sum and the
//! −4-blow-down, symplectic Kodaira dimension, and the rule-table classifier
//! for −4-blow-downs.
//!
//! Every transition is exact rational arithmetic; Kodaira dimension is decided
//! purely by the signs of K·ω and K², so no step may approximate.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};

/// Kodaira dimension as the ordered four-point set −∞ < 0 < 1 < 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kappa {
    NegInfinity,
    Zero,
    One,
    Two,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::NegInfinity => write!(f, "-inf"),
            Kappa::Zero => write!(f, "0"),
            Kappa::One => write!(f, "1"),
            Kappa::Two => write!(f, "2"),
        }
    }
}

impl FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" | "-infinity" | "-oo" => Ok(Kappa::NegInfinity),
            "0" => Ok(Kappa::Zero),
            "1" => Ok(Kappa::One),
            "2" => Ok(Kappa::Two),
            other => Err(Error::Parse(format!("bad Kodaira dimension `{other}`"))),
        }
    }
}

/// Kodaira dimension of a closed surface of the given genus.
pub fn kappa_surface(genus: u64) -> Kappa {
    match genus {
        0 => Kappa::NegInfinity,
        1 => Kappa::Zero,
        _ => Kappa::One,
    }
}

/// Exact (K², K·ω) pair threaded through surgeries, with user-asserted
/// minimality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantState {
    pub k_sq: BigInt,
    pub k_omega: BigRational,
    pub minimal: bool,
    pub label: String,
}

impl InvariantState {
    pub fn new(k_sq: BigInt, k_omega: BigRational, minimal: bool, label: impl Into<String>) -> Self {
        Self {
            k_sq,
            k_omega,
            minimal,
            label: label.into(),
        }
    }

    pub fn from_i64(k_sq: i64, k_omega: i64, minimal: bool, label: &str) -> Self {
        Self::new(
            BigInt::from(k_sq),
            BigRational::from_integer(BigInt::from(k_omega)),
            minimal,
            label,
        )
    }
}

/// Kodaira dimension of a minimal state from the signs of K·ω and K².
///
/// The combination K·ω = 0 with K² > 0 is unassigned by the definition and is
/// reported as an error rather than guessed.
pub fn kappa4(state: &InvariantState) -> Result<Kappa> {
    if !state.minimal {
        return Err(Error::NotMinimal);
    }
    let kw = &state.k_omega;
    let ksq = &state.k_sq;
    if kw.is_negative() || ksq.is_negative() {
        return Ok(Kappa::NegInfinity);
    }
    match (kw.is_zero(), ksq.is_zero()) {
        (true, true) => Ok(Kappa::Zero),
        (false, true) => Ok(Kappa::One),
        (false, false) => Ok(Kappa::Two),
        (true, false) => Err(Error::UnassignedKodaira),
    }
}

fn check_area(area: &BigRational) -> Result<()> {
    if !area.is_positive() {
        return Err(Error::NonPositiveArea(area.clone()));
    }
    Ok(())
}

/// Blow down an exceptional sphere of the given symplectic area:
/// K² gains 1, K·ω loses the area.
pub fn blow_down(state: &InvariantState, area: &BigRational) -> Result<InvariantState> {
    check_area(area)?;
    Ok(InvariantState {
        k_sq: &state.k_sq + 1,
        k_omega: &state.k_omega - area,
        minimal: state.minimal,
        label: state.label.clone(),
    })
}

/// Blow up a point with an exceptional sphere of the given area; inverse of
/// [`blow_down`]. The result is never minimal.
pub fn blow_up(state: &InvariantState, area: &BigRational) -> Result<InvariantState> {
    check_area(area)?;
    Ok(InvariantState {
        k_sq: &state.k_sq - 1,
        k_omega: &state.k_omega + area,
        minimal: false,
        label: state.label.clone(),
    })
}

/// Rationally blow down a −4-sphere of the given area (the fiber sum with the
/// quadric pair): K² gains exactly 1 and K·ω gains half the sphere's area.
pub fn minus4_blow_down(state: &InvariantState, area_v: &BigRational) -> Result<InvariantState> {
    check_area(area_v)?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Ok(InvariantState {
        k_sq: &state.k_sq + 1,
        k_omega: &state.k_omega + area_v * half,
        minimal: state.minimal,
        label: state.label.clone(),
    })
}

/// K·ω of a genus-0 fiber sum: `K_X·ω_X + K_Y·ω_Y + area(V_X) + area(V_Y)`.
/// The gluing needs matching areas on both sides.
pub fn fiber_sum_k_omega(
    kw_x: &BigRational,
    kw_y: &BigRational,
    area_vx: &BigRational,
    area_vy: &BigRational,
) -> Result<BigRational> {
    check_area(area_vx)?;
    check_area(area_vy)?;
    if area_vx != area_vy {
        return Err(Error::Gluing(format!(
            "fiber sum needs matching areas, got {area_vx} and {area_vy}"
        )));
    }
    Ok(kw_x + kw_y + area_vx + area_vy)
}

/// Split of products over a fiber sum: for A decomposing into (A_X, A_Y),
/// `K_M·A = K_X·A_X + A_X·V_X + K_Y·A_Y + A_Y·V_Y` and `A² = A_X² + A_Y²`.
#[allow(clippy::too_many_arguments)]
pub fn split_class(
    kx_ax: &BigInt,
    ax_v: &BigInt,
    ky_ay: &BigInt,
    ay_v: &BigInt,
    ax_sq: &BigInt,
    ay_sq: &BigInt,
) -> (BigInt, BigInt) {
    (kx_ax + ax_v + ky_ay + ay_v, ax_sq + ay_sq)
}

/// Solve `K_M² = K_{X_m}² − k + 1` for the blow-up count k.
pub fn kred_solve(k_m_sq: &BigInt, k_xm_sq: &BigInt) -> Result<BigInt> {
    let k = k_xm_sq - k_m_sq + BigInt::from(1);
    if k.is_negative() {
        return Err(Error::Infeasible(format!(
            "K_M²={k_m_sq} with K_{{X_m}}²={k_xm_sq} would need k={k}"
        )));
    }
    Ok(k)
}

/// Ruledness of the manifold carrying the −4-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ruled {
    NotRuled,
    Rational,
    IrrationalRuled,
}

impl FromStr for Ruled {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "not-ruled" | "none" => Ok(Ruled::NotRuled),
            "rational" => Ok(Ruled::Rational),
            "irrational" | "irrational-ruled" => Ok(Ruled::IrrationalRuled),
            other => Err(Error::Parse(format!("bad ruled kind `{other}`"))),
        }
    }
}

/// Count of exceptional classes meeting the sphere in a single positive point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitCount {
    Finite(u64),
    /// Only possible when the ambient manifold is rational or ruled.
    Unbounded,
}

impl UnitCount {
    fn exceeds_four(&self) -> bool {
        match self {
            UnitCount::Finite(n) => *n > 4,
            UnitCount::Unbounded => true,
        }
    }
}

impl FromStr for UnitCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "unbounded" | "inf" => Ok(UnitCount::Unbounded),
            other => other
                .parse::<u64>()
                .map(UnitCount::Finite)
                .map_err(|e| Error::Parse(format!("bad count `{other}`: {e}"))),
        }
    }
}

/// The data the −4-blow-down classifier consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowdownScenario {
    pub kappa_x: Kappa,
    pub n_sm: UnitCount,
    /// Blow-ups over the minimal model, X = X_m # k.
    pub k: u64,
    /// Sphere obtained by blowing up three distinct points on an exceptional
    /// sphere.
    pub artificial: bool,
    pub ruled: Ruled,
}

/// Classifier output: a determined Kodaira dimension with a structure
/// statement, or an explicit refusal to extrapolate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyOutcome {
    Classified {
        kappa_m: Kappa,
        structure: String,
        rule: &'static str,
    },
    NotCovered {
        reason: String,
        rule: &'static str,
    },
}

/// Rule table for the Kodaira dimension and structure of a −4-blow-down,
/// first match wins. Infeasible inputs are rejected rather than classified;
/// configurations the source results do not settle come back as
/// [`ClassifyOutcome::NotCovered`].
pub fn classify_minus4(s: &BlowdownScenario) -> Result<ClassifyOutcome> {
    let neg_inf = s.kappa_x == Kappa::NegInfinity;
    if neg_inf != (s.ruled != Ruled::NotRuled) {
        return Err(Error::Inconsistent(
            "kappa = -inf exactly when the manifold is rational or ruled".into(),
        ));
    }
    if s.n_sm == UnitCount::Unbounded && !neg_inf {
        return Err(Error::Inconsistent(
            "an unbounded unit-intersection count needs kappa = -inf".into(),
        ));
    }

    // irrational ruled: every symplectic -4-sphere there is artificial
    if s.ruled == Ruled::IrrationalRuled {
        return Ok(ClassifyOutcome::Classified {
            kappa_m: Kappa::NegInfinity,
            structure: "irrational ruled; the blow-down is a smooth blow-down of X".into(),
            rule: "irrational-ruled",
        });
    }

    // more than four unit-intersection classes force kappa(X) = -inf
    if s.n_sm.exceeds_four() {
        return Ok(ClassifyOutcome::Classified {
            kappa_m: Kappa::NegInfinity,
            structure: "more than four unit-intersection exceptional classes only occur on \
                        rational or ruled X; M is a smooth blow-down"
                .into(),
            rule: "excess-unit-count",
        });
    }

    if s.ruled == Ruled::Rational {
        let UnitCount::Finite(n) = s.n_sm else { unreachable!() };
        if n >= 1 {
            return Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::NegInfinity,
                structure: "M is diffeomorphic to the smooth blow-down of X and stays rational"
                    .into(),
                rule: "rational-unit-blow-down",
            });
        }
        return Ok(ClassifyOutcome::NotCovered {
            reason: "rational X with no unit-intersection exceptional class: the outcome \
                     depends on the sphere's class, and only ten-fold blow-ups of the plane \
                     admit kappa(M) >= 0"
                .into(),
            rule: "rational-unsettled",
        });
    }

    // from here on kappa(X) >= 0 and X is neither rational nor ruled
    let UnitCount::Finite(n) = s.n_sm else { unreachable!() };

    if s.artificial {
        // a triple-point blow-up sphere in kappa >= 0 carries exactly four
        // unit-intersection classes and sits over X = X_m # 4
        if n != 4 {
            return Err(Error::Infeasible(format!(
                "artificial sphere with kappa >= 0 has exactly four unit-intersection \
                 classes, got {n}"
            )));
        }
        if s.k < 4 {
            return Err(Error::Infeasible(
                "an artificial sphere needs at least four blow-ups".into(),
            ));
        }
        return Ok(ClassifyOutcome::Classified {
            kappa_m: s.kappa_x,
            structure: "X = X_m # 4 and M is diffeomorphic to X_m # 3".into(),
            rule: "artificial-triple-point",
        });
    }

    if n > 0 {
        if n >= 3 {
            return Err(Error::Infeasible(format!(
                "a non-artificial sphere with kappa >= 0 admits at most two \
                 unit-intersection classes, got {n}"
            )));
        }
        if s.k != n {
            return Err(Error::Infeasible(format!(
                "with kappa >= 0 and {n} unit-intersection classes the relatively minimal \
                 X is X_m # {n}, so k must equal {n}, got {}",
                s.k
            )));
        }
        if s.kappa_x == Kappa::Zero {
            if n == 1 {
                return Err(Error::Infeasible(
                    "kappa = 0 rules out a single unit-intersection class (adjunction)".into(),
                ));
            }
            return Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::Zero,
                structure: "M = X_m # 1 with X_m a K3 surface, an Enriques surface, or an \
                            as yet unknown surface with kappa 0"
                    .into(),
                rule: "kodaira-zero-pair",
            });
        }
        let structure = if n == 1 {
            "M is the minimal model X_m".to_string()
        } else {
            format!("M is diffeomorphic to X_m # {}", n - 1)
        };
        return Ok(ClassifyOutcome::Classified {
            kappa_m: s.kappa_x,
            structure,
            rule: "unit-blow-down-count",
        });
    }

    // n = 0: the blow-down M is minimal
    match s.kappa_x {
        Kappa::Zero => match s.k {
            0 => Err(Error::Infeasible(
                "no minimal manifold with Kodaira dimension 0 contains a symplectic \
                 -4-sphere"
                    .into(),
            )),
            1 => Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::One,
                structure: "M is an order 2 logarithmic transform of X_m".into(),
                rule: "log-transform",
            }),
            _ => Err(Error::Infeasible(
                "kappa = 0 with no unit-intersection classes needs k <= 1".into(),
            )),
        },
        Kappa::One => match s.k {
            0 => Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::Two,
                structure: "X minimal; K² rises from 0 to 1".into(),
                rule: "minimal-elliptic-step",
            }),
            1 => Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::One,
                structure: "cusp-fiber blow-up; K² returns to 0".into(),
                rule: "cusp-blow-up",
            }),
            2..=4 => Ok(ClassifyOutcome::NotCovered {
                reason: format!(
                    "kappa = 1 with k = {} and no unit-intersection classes is not settled",
                    s.k
                ),
                rule: "kappa-one-unsettled",
            }),
            _ => Err(Error::Infeasible(
                "kappa >= 0 with k > 4 admits no relatively minimal non-artificial \
                 -4-sphere"
                    .into(),
            )),
        },
        Kappa::Two => {
            if s.k > 4 {
                return Err(Error::Infeasible(
                    "kappa >= 0 with k > 4 admits no relatively minimal non-artificial \
                     -4-sphere"
                        .into(),
                ));
            }
            Ok(ClassifyOutcome::Classified {
                kappa_m: Kappa::Two,
                structure: "M minimal with K² > 0".into(),
                rule: "general-type",
            })
        }
        Kappa::NegInfinity => unreachable!("handled by the ruled branches"),
    }
}

/// Hypotheses feeding the minimality criterion for a genus-g fiber sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDescriptor {
    pub genus: u64,
    pub vx_square: BigInt,
    pub vy_square: BigInt,
    /// An exceptional sphere lives in X∖V_X or Y∖V_Y.
    pub exceptional_disjoint: bool,
    /// The sum is Z #_{V=2H} ℂP² and Z has two disjoint exceptional spheres
    /// each meeting V_Z once.
    pub quadric_two_exceptional: bool,
    /// The sum is Z #_{V_B} B with B a sphere bundle and V_B a section.
    pub bundle_section: bool,
}

impl SumDescriptor {
    pub fn new(
        genus: u64,
        vx_square: BigInt,
        vy_square: BigInt,
        exceptional_disjoint: bool,
        quadric_two_exceptional: bool,
        bundle_section: bool,
    ) -> Result<Self> {
        if &vx_square + &vy_square != BigInt::zero() {
            return Err(Error::Gluing(format!(
                "normal bundles must cancel: {vx_square} + {vy_square} != 0"
            )));
        }
        Ok(Self {
            genus,
            vx_square,
            vy_square,
            exceptional_disjoint,
            quadric_two_exceptional,
            bundle_section,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Minimality {
    NotMinimal,
    MinimalIffZMinimal,
    Minimal,
}

impl Minimality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Minimality::NotMinimal => "not-minimal",
            Minimality::MinimalIffZMinimal => "minimal-iff-Z-minimal",
            Minimality::Minimal => "minimal",
        }
    }
}

/// Minimality of a fiber sum: the two non-minimal clauses, the bundle-section
/// clause, and minimal in all other cases.
pub fn minimality_of_sum(d: &SumDescriptor) -> Minimality {
    if d.exceptional_disjoint || d.quadric_two_exceptional {
        Minimality::NotMinimal
    } else if d.bundle_section {
        Minimality::MinimalIffZMinimal
    } else {
        Minimality::Minimal
    }
}

/// One step of a surgery pipeline.
#[derive(Debug, Clone)]
pub enum PipelineStep {
    BlowUp {
        area: BigRational,
    },
    BlowDown {
        area: BigRational,
    },
    Minus4 {
        area: BigRational,
    },
    FiberSum {
        kw_y: BigRational,
        area_x: BigRational,
        area_y: BigRational,
        ksq_y: BigInt,
        kv_x: BigInt,
        vsq_x: BigInt,
        kv_y: BigInt,
        vsq_y: BigInt,
    },
}

/// A pipeline step together with optional post-step assertions.
#[derive(Debug, Clone)]
pub struct PipelineEntry {
    pub step: PipelineStep,
    /// Asserted minimality of the result; `None` keeps the previous flag
    /// (blow-ups always clear it).
    pub minimal: Option<bool>,
    pub label: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Pipeline {
    pub start: InvariantState,
    pub steps: Vec<PipelineEntry>,
}

#[derive(Debug, Clone)]
pub struct PipelineTrace {
    pub states: Vec<InvariantState>,
    /// Kodaira dimension of the final state when it is marked minimal and the
    /// sign combination is assigned; otherwise the reason it is unavailable.
    pub final_kappa: std::result::Result<Kappa, String>,
}

/// Evaluate a pipeline, recording the state after every step.
pub fn run_pipeline(p: &Pipeline) -> Result<PipelineTrace> {
    let mut states = vec![p.start.clone()];
    for entry in &p.steps {
        let cur = states.last().expect("nonempty");
        let mut next = match &entry.step {
            PipelineStep::BlowUp { area } => blow_up(cur, area)?,
            PipelineStep::BlowDown { area } => blow_down(cur, area)?,
            PipelineStep::Minus4 { area } => minus4_blow_down(cur, area)?,
            PipelineStep::FiberSum {
                kw_y,
                area_x,
                area_y,
                ksq_y,
                kv_x,
                vsq_x,
                kv_y,
                vsq_y,
            } => {
                if vsq_x + vsq_y != BigInt::zero() {
                    return Err(Error::Gluing(format!(
                        "normal bundles must cancel: {vsq_x} + {vsq_y} != 0"
                    )));
                }
                let k_omega = fiber_sum_k_omega(&cur.k_omega, kw_y, area_x, area_y)?;
                // K_M² = (K_X + V_X)² + (K_Y + V_Y)²
                let two = BigInt::from(2);
                let k_sq = (&cur.k_sq + &two * kv_x + vsq_x) + (ksq_y + &two * kv_y + vsq_y);
                InvariantState {
                    k_sq,
                    k_omega,
                    minimal: cur.minimal,
                    label: cur.label.clone(),
                }
            }
        };
        if let Some(m) = entry.minimal {
            next.minimal = m;
        }
        if let Some(l) = &entry.label {
            next.label = l.clone();
        }
        states.push(next);
    }
    let last = states.last().expect("nonempty");
    let final_kappa = kappa4(last).map_err(|e| e.to_string());
    Ok(PipelineTrace {
        states,
        final_kappa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> BigRational {
        crate::lattice::parse_rational(s).unwrap()
    }

    #[test]
    fn surface_kodaira() {
        assert_eq!(kappa_surface(0), Kappa::NegInfinity);
        assert_eq!(kappa_surface(1), Kappa::Zero);
        assert_eq!(kappa_surface(5), Kappa::One);
    }

    #[test]
    fn kappa_order() {
        assert!(Kappa::NegInfinity < Kappa::Zero);
        assert!(Kappa::Zero < Kappa::One);
        assert!(Kappa::One < Kappa::Two);
        assert_eq!("-inf".parse::<Kappa>().unwrap(), Kappa::NegInfinity);
    }

    #[test]
    fn kappa4_table() {
        let st = |ksq: i64, kw: &str| InvariantState::new(BigInt::from(ksq), rat(kw), true, "");
        assert_eq!(kappa4(&st(0, "0")).unwrap(), Kappa::Zero);
        assert_eq!(kappa4(&st(0, "7/2")).unwrap(), Kappa::One);
        assert_eq!(kappa4(&st(-1, "5")).unwrap(), Kappa::NegInfinity);
        assert_eq!(kappa4(&st(3, "-1/3")).unwrap(), Kappa::NegInfinity);
        assert_eq!(kappa4(&st(2, "1")).unwrap(), Kappa::Two);
        assert!(matches!(kappa4(&st(1, "0")), Err(Error::UnassignedKodaira)));
        let non_min = InvariantState::new(BigInt::zero(), rat("0"), false, "");
        assert!(matches!(kappa4(&non_min), Err(Error::NotMinimal)));
    }

    #[test]
    fn blow_down_and_up() {
        let x = InvariantState::from_i64(-1, 3, false, "X");
        let y = blow_down(&x, &rat("1")).unwrap();
        assert_eq!(y.k_sq, BigInt::zero());
        assert_eq!(y.k_omega, rat("2"));
        // inverse composition is the identity on (K², K·ω)
        let back = blow_up(&y, &rat("1")).unwrap();
        assert_eq!(back.k_sq, x.k_sq);
        assert_eq!(back.k_omega, x.k_omega);
        assert!(!back.minimal);
        assert!(blow_down(&x, &rat("0")).is_err());
        assert!(blow_up(&x, &rat("-2")).is_err());
    }

    #[test]
    fn successive_blow_downs() {
        let mut st = InvariantState::from_i64(-3, 10, false, "X");
        let areas = ["1", "1/2", "3"];
        for a in &areas {
            st = blow_down(&st, &rat(a)).unwrap();
        }
        assert_eq!(st.k_sq, BigInt::zero());
        assert_eq!(st.k_omega, rat("11/2"));
    }

    #[test]
    fn minus4_arithmetic() {
        let x = InvariantState::from_i64(-1, 5, true, "X");
        let m = minus4_blow_down(&x, &rat("4")).unwrap();
        assert_eq!(m.k_sq, BigInt::zero());
        assert_eq!(m.k_omega, rat("7"));
        assert!(minus4_blow_down(&x, &rat("0")).is_err());
    }

    #[test]
    fn fiber_sum_k_omega_examples() {
        // plane side carrying the quadric: K·ω = −3t, both areas 2t
        let t = rat("2");
        let got = fiber_sum_k_omega(&rat("5"), &(-rat("3") * &t), &(rat("2") * &t), &(rat("2") * &t))
            .unwrap();
        assert_eq!(got, rat("7")); // 5 + t
        assert_eq!(
            fiber_sum_k_omega(&rat("0"), &rat("0"), &rat("3"), &rat("3")).unwrap(),
            rat("6")
        );
        // symmetric in the two sides
        assert_eq!(
            fiber_sum_k_omega(&rat("1"), &rat("2"), &rat("3"), &rat("3")).unwrap(),
            fiber_sum_k_omega(&rat("2"), &rat("1"), &rat("3"), &rat("3")).unwrap()
        );
        assert!(fiber_sum_k_omega(&rat("1"), &rat("2"), &rat("3"), &rat("4")).is_err());
    }

    #[test]
    fn split_class_examples() {
        let b = |v: i64| BigInt::from(v);
        // class wholly inside X, disjoint from V
        assert_eq!(
            split_class(&b(7), &b(0), &b(0), &b(0), &b(2), &b(0)),
            (b(7), b(2))
        );
        // exceptional sphere disjoint from V stays exceptional
        assert_eq!(
            split_class(&b(-1), &b(0), &b(0), &b(0), &b(-1), &b(0)),
            (b(-1), b(-1))
        );
        assert_eq!(
            split_class(&b(0), &b(0), &b(0), &b(0), &b(2), &b(-3)).1,
            b(-1)
        );
    }

    #[test]
    fn kred_examples() {
        let b = |v: i64| BigInt::from(v);
        assert_eq!(kred_solve(&b(9), &b(9)).unwrap(), b(1));
        assert_eq!(kred_solve(&b(8), &b(9)).unwrap(), b(2));
        assert_eq!(kred_solve(&b(10), &b(9)).unwrap(), b(0));
        assert!(kred_solve(&b(11), &b(9)).is_err());
    }

    fn scenario(kappa_x: Kappa, n: u64, k: u64) -> BlowdownScenario {
        BlowdownScenario {
            kappa_x,
            n_sm: UnitCount::Finite(n),
            k,
            artificial: false,
            ruled: Ruled::NotRuled,
        }
    }

    #[test]
    fn classify_kodaira_zero_rows() {
        let out = classify_minus4(&scenario(Kappa::Zero, 0, 1)).unwrap();
        match out {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::One);
                assert_eq!(rule, "log-transform");
            }
            other => panic!("unexpected {other:?}"),
        }
        let out = classify_minus4(&scenario(Kappa::Zero, 2, 2)).unwrap();
        match out {
            ClassifyOutcome::Classified { kappa_m, rule, structure } => {
                assert_eq!(kappa_m, Kappa::Zero);
                assert_eq!(rule, "kodaira-zero-pair");
                assert!(structure.contains("unknown surface with kappa 0"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_higher_kodaira_rows() {
        let got = |k: u64| classify_minus4(&scenario(Kappa::One, 0, k)).unwrap();
        match got(0) {
            ClassifyOutcome::Classified { kappa_m, .. } => assert_eq!(kappa_m, Kappa::Two),
            other => panic!("unexpected {other:?}"),
        }
        match got(1) {
            ClassifyOutcome::Classified { kappa_m, .. } => assert_eq!(kappa_m, Kappa::One),
            other => panic!("unexpected {other:?}"),
        }
        match got(3) {
            ClassifyOutcome::NotCovered { rule, .. } => assert_eq!(rule, "kappa-one-unsettled"),
            other => panic!("unexpected {other:?}"),
        }
        match classify_minus4(&scenario(Kappa::Two, 0, 0)).unwrap() {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::Two);
                assert_eq!(rule, "general-type");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_ruled_and_artificial() {
        let mut s = scenario(Kappa::NegInfinity, 4, 5);
        s.ruled = Ruled::IrrationalRuled;
        s.artificial = true;
        match classify_minus4(&s).unwrap() {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::NegInfinity);
                assert_eq!(rule, "irrational-ruled");
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut s = scenario(Kappa::NegInfinity, 2, 3);
        s.ruled = Ruled::Rational;
        match classify_minus4(&s).unwrap() {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::NegInfinity);
                assert_eq!(rule, "rational-unit-blow-down");
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut s = scenario(Kappa::NegInfinity, 0, 10);
        s.ruled = Ruled::Rational;
        assert!(matches!(
            classify_minus4(&s).unwrap(),
            ClassifyOutcome::NotCovered { .. }
        ));
        let mut s = scenario(Kappa::One, 4, 5);
        s.artificial = true;
        match classify_minus4(&s).unwrap() {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::One);
                assert_eq!(rule, "artificial-triple-point");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_infeasible_and_inconsistent() {
        assert!(matches!(
            classify_minus4(&scenario(Kappa::Zero, 0, 0)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            classify_minus4(&scenario(Kappa::One, 0, 7)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            classify_minus4(&scenario(Kappa::Zero, 1, 1)),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            classify_minus4(&scenario(Kappa::One, 2, 5)),
            Err(Error::Infeasible(_))
        ));
        // kappa -inf without a ruled kind is inconsistent
        assert!(matches!(
            classify_minus4(&scenario(Kappa::NegInfinity, 0, 0)),
            Err(Error::Inconsistent(_))
        ));
        let mut s = scenario(Kappa::One, 0, 0);
        s.n_sm = UnitCount::Unbounded;
        assert!(matches!(classify_minus4(&s), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn classify_excess_count() {
        let mut s = scenario(Kappa::NegInfinity, 9, 3);
        s.ruled = Ruled::Rational;
        match classify_minus4(&s).unwrap() {
            ClassifyOutcome::Classified { kappa_m, rule, .. } => {
                assert_eq!(kappa_m, Kappa::NegInfinity);
                assert_eq!(rule, "excess-unit-count");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimality_clauses() {
        let b = BigInt::from(-4);
        let pos = BigInt::from(4);
        let d = SumDescriptor::new(0, b.clone(), pos.clone(), true, false, false).unwrap();
        assert_eq!(minimality_of_sum(&d), Minimality::NotMinimal);
        let d = SumDescriptor::new(0, pos.clone(), b.clone(), false, true, false).unwrap();
        assert_eq!(minimality_of_sum(&d), Minimality::NotMinimal);
        let d = SumDescriptor::new(0, BigInt::zero(), BigInt::zero(), false, false, true).unwrap();
        assert_eq!(minimality_of_sum(&d), Minimality::MinimalIffZMinimal);
        let d = SumDescriptor::new(0, b.clone(), pos.clone(), false, false, false).unwrap();
        assert_eq!(minimality_of_sum(&d), Minimality::Minimal);
        assert!(SumDescriptor::new(0, b.clone(), b, false, false, false).is_err());
    }

    #[test]
    fn enriques_pipeline() {
        // two blow-up / -4-blow-down rounds from K² = 0 return to K² = 0
        let start = InvariantState::new(BigInt::zero(), rat("-2"), false, "E(1)");
        let step = |s, m, l: &str| PipelineEntry {
            step: s,
            minimal: m,
            label: Some(l.to_string()),
        };
        let p = Pipeline {
            start,
            steps: vec![
                step(PipelineStep::BlowUp { area: rat("1/2") }, None, "E(1)#1"),
                step(PipelineStep::Minus4 { area: rat("1") }, None, "E(1)_2"),
                step(PipelineStep::BlowUp { area: rat("1/2") }, None, "E(1)_2#1"),
                step(
                    PipelineStep::Minus4 { area: rat("1") },
                    Some(true),
                    "E(1)_{2,2}",
                ),
            ],
        };
        let trace = run_pipeline(&p).unwrap();
        let ksqs: Vec<i64> = trace
            .states
            .iter()
            .map(|s| {
                use num::ToPrimitive;
                s.k_sq.to_i64().unwrap()
            })
            .collect();
        assert_eq!(ksqs, vec![0, -1, 0, -1, 0]);
        let last = trace.states.last().unwrap();
        assert_eq!(last.k_omega, rat("0"));
        assert_eq!(trace.final_kappa, Ok(Kappa::Zero));
    }

    #[test]
    fn minus4_as_fiber_sum_with_quadric() {
        // summing with the quadric pair reproduces the -4-blow-down formulas:
        // V_X of area 4, plane side K·ω = -3t, V_Y = 2H of area 2t = 4
        let start = InvariantState::from_i64(-1, 5, true, "X");
        let p = Pipeline {
            start: start.clone(),
            steps: vec![PipelineEntry {
                step: PipelineStep::FiberSum {
                    kw_y: rat("-6"),
                    area_x: rat("4"),
                    area_y: rat("4"),
                    ksq_y: BigInt::from(9),
                    kv_x: BigInt::from(2), // adjunction: K·V = 2 for a -4-sphere
                    vsq_x: BigInt::from(-4),
                    kv_y: BigInt::from(-6), // K·2H in the plane
                    vsq_y: BigInt::from(4),
                },
                minimal: None,
                label: None,
            }],
        };
        let trace = run_pipeline(&p).unwrap();
        let direct = minus4_blow_down(&start, &rat("4")).unwrap();
        let end = trace.states.last().unwrap();
        assert_eq!(end.k_sq, direct.k_sq);
        assert_eq!(end.k_omega, direct.k_omega);
    }
}
