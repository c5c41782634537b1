//! Randomised identity suites behind `verify`.
//!
//! Every suite draws from its own stream of [`SuiteRng`], so a report is a
//! pure function of `(suite, trials, seed, tol)`.

use serde::Serialize;

use crate::bilinear::{compute_dirac, compute_fast, fast_oracle_gap, fpk_residuals};
use crate::clifford::{gammas, max_abs, minkowski_dot, Block, FourVector, Mat4, C64, I, METRIC, ONE, ZERO};
use crate::homotopy::{
    basis_homotopy, find_transition, sample_basis, spinor_homotopy, sweep, sweep_grid, CoordFunction,
};
use crate::lounesto::{
    classify, classify_by_coefficients, type2_coefficients, type3_coefficients, ClassifyOptions, LounestoClass,
};
use crate::mdo::{
    charge_conjugate, chiral_relation_residuals, chiral_relation_residuals_with, diraclike_residual, elko,
    fg_functions, fg_minus_product, mdo_bilinears, momentum_slash, phase_alignment, sa_relation, standard_slash,
    structure_defect, xi, Conjugation, Helicity, Momentum,
};
use crate::plane::{
    change_basis, chi_expanded, chi_factors, coefficient_set, dirac_from_base, map_dirac_mdo, mdo_from_base,
    standard_bases, BasisTag, Direction, MOperator, MassInputs, PlaneCoords,
};
use crate::rim::{
    base_violations, del_ab_residuals, heisenberg_residual, heisenberg_residual_with, potentials, validate_rim_base,
    BaseViolation, RimParams,
};
use crate::rng::SuiteRng;
use crate::spinor::{Sign, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Fpk,
    Rim,
    Plane,
    Homotopy,
    Mdo,
    Props,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Clifford, Suite::Fpk, Suite::Rim, Suite::Plane, Suite::Homotopy, Suite::Mdo, Suite::Props];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Fpk => "fpk",
            Suite::Rim => "rim",
            Suite::Plane => "plane",
            Suite::Homotopy => "homotopy",
            Suite::Mdo => "mdo",
            Suite::Props => "props",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Trial count used when none is given.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Clifford | Suite::Plane | Suite::Mdo => 1_000,
            Suite::Homotopy => 200,
            Suite::Fpk | Suite::Rim | Suite::Props => 10_000,
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u64 + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// `value < bound`
    #[serde(rename = "<")]
    Below,
    /// `value <= bound`
    #[serde(rename = "<=")]
    AtMost,
    /// `value > bound`
    #[serde(rename = ">")]
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub relation: Bound,
    pub passed: bool,
}

impl Check {
    fn new(name: &'static str, value: f64, relation: Bound, bound: f64) -> Self {
        let passed = match relation {
            Bound::Below => value < bound,
            Bound::AtMost => value <= bound,
            Bound::Above => value > bound,
        };
        Check { name, value, bound, relation, passed }
    }
}

/// A measured quantity that is reported without a pass/fail verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tol: f64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides every suite's default trial count.
    pub trials: Option<usize>,
    pub tol: f64,
}

pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, cfg)).collect();
    let passed = reports.iter().all(|r| r.passed);
    VerifyReport { seed: cfg.seed, tol: cfg.tol, suites: reports, passed }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let trials = cfg.trials.unwrap_or_else(|| suite.default_trials()).max(1);
    let mut rng = SuiteRng::new(cfg.seed, suite.stream());
    let mut out = Collector::default();
    match suite {
        Suite::Clifford => clifford_suite(&mut rng, trials, &mut out),
        Suite::Fpk => fpk_suite(&mut rng, trials, &mut out),
        Suite::Rim => rim_suite(&mut rng, trials, cfg.tol, &mut out),
        Suite::Plane => plane_suite(&mut rng, trials, cfg.tol, &mut out),
        Suite::Homotopy => homotopy_suite(&mut rng, trials, cfg.tol, &mut out),
        Suite::Mdo => mdo_suite(&mut rng, trials, cfg.tol, &mut out),
        Suite::Props => props_suite(&mut rng, trials, cfg.tol, &mut out),
    }
    let passed = out.checks.iter().all(|c| c.passed);
    SuiteReport { suite, trials, checks: out.checks, observations: out.observations, passed }
}

#[derive(Default)]
struct Collector {
    checks: Vec<Check>,
    observations: Vec<Observation>,
}

impl Collector {
    fn below(&mut self, name: &'static str, value: f64, bound: f64) {
        self.checks.push(Check::new(name, value, Bound::Below, bound));
    }

    fn at_most(&mut self, name: &'static str, value: f64, bound: f64) {
        self.checks.push(Check::new(name, value, Bound::AtMost, bound));
    }

    fn above(&mut self, name: &'static str, value: f64, bound: f64) {
        self.checks.push(Check::new(name, value, Bound::Above, bound));
    }

    fn count(&mut self, name: &'static str, failures: usize) {
        self.at_most(name, failures as f64, 0.0);
    }

    fn observe(&mut self, name: &'static str, value: f64) {
        self.observations.push(Observation { name, value });
    }
}

/// Running maximum that treats NaN as a failure.
#[derive(Clone, Copy)]
struct Max(f64);

impl Max {
    fn new() -> Self {
        Max(0.0)
    }

    fn add(&mut self, v: f64) {
        if v.is_nan() || v > self.0 {
            self.0 = if v.is_nan() { f64::INFINITY } else { v };
        }
    }
}

#[derive(Clone, Copy)]
struct Min(f64);

impl Min {
    fn new() -> Self {
        Min(f64::INFINITY)
    }

    fn add(&mut self, v: f64) {
        if v.is_nan() {
            self.0 = f64::NEG_INFINITY;
        } else if v < self.0 {
            self.0 = v;
        }
    }
}

fn random_params(rng: &mut SuiteRng, tol: f64) -> RimParams {
    let re = rng.signed_range(0.3, 1.5);
    let im_a = rng.range(-1.5, 1.5);
    let im_b = rng.signed_range(0.3, 1.5);
    RimParams::validate(C64::new(re, im_a), C64::new(re, im_b), tol).expect("sampled couplings are integrable")
}

/// A unit-norm RIM base whose current is not small against its norm.
fn random_base(rng: &mut SuiteRng, tol: f64, min_current: f64) -> (Spinor, crate::bilinear::Bilinears) {
    loop {
        let psi = rng.spinor();
        let psi = psi.scale(C64::from(1.0 / psi.norm()));
        if let Ok(bil) = validate_rim_base(&psi, tol) {
            if bil.j_sq().re.sqrt() >= min_current {
                return (psi, bil);
            }
        }
    }
}

fn random_momentum(rng: &mut SuiteRng) -> Momentum {
    let m = rng.range(0.5, 2.0);
    let p = rng.range(0.0, 3.0);
    let theta = rng.range(0.0, std::f64::consts::PI);
    let phi = rng.range(0.0, std::f64::consts::TAU);
    Momentum::new(m, p, theta, phi).expect("sampled momentum is valid")
}

fn clifford_suite(rng: &mut SuiteRng, trials: usize, out: &mut Collector) {
    let g = gammas();
    let mut anti = Max::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
            let eta = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
            anti.add(max_abs(&(ac - Mat4::identity() * C64::from(eta))));
        }
    }
    let mut g5 = Max::new();
    for mu in 0..4 {
        g5.add(max_abs(&(g.gamma5 * g.gamma[mu] + g.gamma[mu] * g.gamma5)));
    }
    let square = max_abs(&(g.gamma5 * g.gamma5 - Mat4::identity()));
    let product = max_abs(&(g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3] * I - g.gamma5));
    out.below("anticommutator", anti.0, 1e-12);
    out.below("gamma5_squared", square, 1e-12);
    out.below("gamma5_product", product, 1e-12);
    out.below("gamma5_anticommutes", g5.0, 1e-12);

    let mut slash = Max::new();
    let mut sandwich = Max::new();
    for _ in 0..trials {
        let u: FourVector = std::array::from_fn(|_| rng.complex());
        let v: FourVector = std::array::from_fn(|_| rng.complex());
        let (su, sv) = (g.slash(&u), g.slash(&v));
        let size = u.iter().chain(v.iter()).map(|z| z.norm()).fold(1.0, f64::max);
        let sq = su * su - Mat4::identity() * minkowski_dot(&u, &u);
        slash.add(max_abs(&sq) / (size * size));
        let ac = su * sv + sv * su - Mat4::identity() * (minkowski_dot(&u, &v) * 2.0);
        sandwich.add(max_abs(&ac) / (size * size));
    }
    out.below("slash_square", slash.0, 1e-12);
    out.below("slash_anticommutator", sandwich.0, 1e-12);
}

fn fpk_suite(rng: &mut SuiteRng, trials: usize, out: &mut Collector) {
    let mut fpk = [Max::new(); 4];
    for _ in 0..trials {
        let psi = rng.spinor();
        let b = compute_dirac(&psi);
        let denom = b.scale * b.scale;
        for (m, r) in fpk.iter_mut().zip(fpk_residuals(&b).as_array()) {
            m.add(r / denom);
        }
    }
    out.below("fpk_norm", fpk[0].0, 1e-10);
    out.below("fpk_cross", fpk[1].0, 1e-10);
    out.below("fpk_orthogonal", fpk[2].0, 1e-10);
    out.below("fpk_opposite", fpk[3].0, 1e-10);

    let mut gap = Max::new();
    for _ in 0..trials {
        let base = rng.spinor();
        let (r1, r2) = (rng.complex(), rng.complex());
        let psi = MOperator::new(r1, r2).apply(&base);
        let fast = compute_fast(&base, r1, r2);
        gap.add(fast_oracle_gap(&fast, &compute_dirac(&psi)) / psi.norm_sq());
    }
    out.below("fast_oracle_gap", gap.0, 1e-10);
}

fn rim_suite(rng: &mut SuiteRng, trials: usize, tol: f64, out: &mut Collector) {
    let opt = ClassifyOptions { tol };
    let (mut heis, mut del_a, mut del_b) = (Max::new(), Max::new(), Max::new());
    let mut control = Min::new();
    let mut unity = Max::new();
    let mut not_type1 = 0;
    let mut rejected = 0;
    for _ in 0..trials {
        let psi = rng.spinor();
        let p = random_params(rng, tol);
        let bil = match validate_rim_base(&psi, tol) {
            Ok(b) => b,
            Err(_) => {
                rejected += 1;
                continue;
            }
        };
        if !matches!(classify(&bil, &opt), Ok(c) if c.class == LounestoClass::Type1) {
            not_type1 += 1;
        }
        let coupling = 1.0 + p.a.norm() + p.b.norm();
        let n = psi.norm();
        heis.add(heisenberg_residual(&psi, &p) / (coupling * n.powi(3)));
        let (ra, rb) = del_ab_residuals(&psi, &p);
        del_a.add(ra / (coupling * n.powi(4)));
        del_b.add(rb / (coupling * n.powi(4)));
        let shifted = C64::from(p.s + coupling);
        control.add(heisenberg_residual_with(&psi, &p, shifted) / (coupling * n.powi(3)));
        if let Ok(pot) = potentials(&bil, &p, tol) {
            unity.add((pot.theta.norm() - 1.0).abs());
        }
    }
    out.below("heisenberg", heis.0, 1e-10);
    out.below("del_a", del_a.0, 1e-10);
    out.below("del_b", del_b.0, 1e-10);
    out.above("perturbed_s_control", control.0, 1e-3);
    out.below("potential_phase_modulus", unity.0, 1e-10);
    out.count("valid_base_not_type1", not_type1);
    out.observe("random_bases_rejected", rejected as f64);

    // Synthetic bases with one scalar removed.
    let mut wrong_reason = 0;
    for k in 0..trials {
        let (base, bil) = random_base(rng, tol, 0.0);
        let (a, b) = (bil.a.re, bil.b.re);
        let (r, expected) = if k % 2 == 0 {
            (type3_coefficients(a, b), BaseViolation::ZeroScalar)
        } else {
            (type2_coefficients(a, b), BaseViolation::ZeroPseudoscalar)
        };
        let psi = MOperator::new(r.0, r.1).apply(&base);
        match validate_rim_base(&psi, tol) {
            Err(v) if v == vec![expected] => {}
            _ => wrong_reason += 1,
        }
    }
    out.count("synthetic_base_rejection", wrong_reason);
    out.count(
        "zero_spinor_rejection",
        usize::from(base_violations(&compute_dirac(&Spinor::zero()), tol) != vec![BaseViolation::ZeroSpinor]),
    );
}

fn plane_suite(rng: &mut SuiteRng, trials: usize, tol: f64, out: &mut Collector) {
    let (mut chi, mut mn, mut lq, mut coords, mut map, mut roundtrip) =
        (Max::new(), Max::new(), Max::new(), Max::new(), Max::new(), Max::new());
    let mut failures = 0;
    for _ in 0..trials {
        let (base, bil) = random_base(rng, tol, 0.05);
        let p = random_params(rng, tol);
        let inputs = MassInputs {
            dirac_mass: rng.range(0.1, 2.0),
            mdo_mass: rng.range(0.1, 2.0),
            theta: rng.range(0.0, std::f64::consts::PI),
            sign: if rng.coin() { Sign::Plus } else { Sign::Minus },
        };
        let Ok(c) = coefficient_set(&p, &bil, inputs, tol) else {
            failures += 1;
            continue;
        };
        let (Ok(f), Ok(e)) = (chi_factors(&c), chi_expanded(&p, &bil, inputs, tol)) else {
            failures += 1;
            continue;
        };
        let size = [f.chi1, f.chi2, f.chi1_inv, f.chi2_inv].iter().map(|z| z.norm()).fold(0.0, f64::max);
        chi.add(f.max_diff(&e) / size);

        let (m, n) = (f.m_operator(), f.n_operator());
        mn.add(m.compose(&n).max_diff(&MOperator::identity()).max(n.compose(&m).max_diff(&MOperator::identity())));

        let (l, q) = (c.l_operator(), c.q_operator());
        let (Ok(l_inv), Ok(q_inv)) = (l.inverse(), q.inverse()) else {
            failures += 1;
            continue;
        };
        let id = MOperator::identity();
        let via = q.compose(&l_inv);
        let via_size = via.c1.norm().max(via.c2.norm());
        lq.add(l.compose(&l_inv).max_diff(&id).max(q.compose(&q_inv).max_diff(&id)).max(via.max_diff(&m) / via_size));

        let [b, d, mb] = standard_bases(&base, &c);
        let start = PlaneCoords::new(rng.complex(), rng.complex(), BasisTag::B);
        let back = change_basis(&start, &b, &d)
            .and_then(|x| change_basis(&x, &d, &mb))
            .and_then(|x| change_basis(&x, &mb, &b));
        match back {
            Ok(x) => coords.add(x.max_diff(&start) / start.r1.norm().max(start.r2.norm())),
            Err(_) => failures += 1,
        }

        let dirac = dirac_from_base(&base, &c);
        let lambda = mdo_from_base(&base, &c);
        match map_dirac_mdo(&dirac, &f, Direction::DiracToMdo) {
            Ok(x) => map.add(x.max_diff(&lambda) / lambda.norm()),
            Err(_) => failures += 1,
        }
        match map_dirac_mdo(&lambda, &f, Direction::MdoToDirac)
            .and_then(|x| map_dirac_mdo(&x, &f, Direction::DiracToMdo))
        {
            Ok(x) => roundtrip.add(x.max_diff(&lambda) / lambda.norm()),
            Err(_) => failures += 1,
        }
    }
    out.below("chi_closed_form", chi.0, 1e-10);
    out.below("mn_identity", mn.0, 1e-10);
    out.below("lq_inversion", lq.0, 1e-10);
    out.below("coordinate_roundtrip", coords.0, 1e-10);
    out.below("map_dirac_to_mdo", map.0, 1e-10);
    out.below("map_roundtrip", roundtrip.0, 1e-10);
    out.count("construction_failures", failures);
}

fn homotopy_suite(rng: &mut SuiteRng, trials: usize, tol: f64, out: &mut Collector) {
    let opt = ClassifyOptions { tol };
    let grid = sweep_grid(16);
    let (mut endpoint, mut line, mut ratio, mut antipodal_t) = (Max::new(), Max::new(), Max::new(), Max::new());
    let mut missed_degenerate = 0;
    let mut singular_samples = 0;
    for _ in 0..trials {
        let (base, bil) = random_base(rng, tol, 0.0);
        let f = CoordFunction::new(rng.complex());
        let g = if rng.coin() {
            CoordFunction::dirac(&bil, tol).expect("valid base")
        } else {
            CoordFunction::new(rng.complex())
        };
        let path = basis_homotopy(f, g);
        let x = rng.complex();
        endpoint.add((path.value(x, 0.0) - f.eval(x)).norm().max((path.value(x, 1.0) - g.eval(x)).norm()));
        let size = f.eval(x).norm().max(g.eval(x).norm());
        for w in grid.windows(2) {
            let mid = path.value(x, 0.5 * (w[0] + w[1]));
            let avg = (path.value(x, w[0]) + path.value(x, w[1])) * 0.5;
            line.add((mid - avg).norm() / size);
        }
        for &t in &grid {
            match sample_basis(&path, &base, x, t, tol) {
                Ok(s) => {
                    ratio.add(s.ratio_error());
                    if !s.induced_operator().is_invertible() {
                        singular_samples += 1;
                    }
                }
                Err(_) if path.is_degenerate_at(t, tol) => {}
                Err(_) => singular_samples += 1,
            }
        }

        let k = rng.range(0.1, 10.0);
        let anti = basis_homotopy(f, CoordFunction::new(-f.w * k));
        let expect = 1.0 / (1.0 + k);
        match anti.degenerate_t {
            Some(t) => {
                antipodal_t.add((t - expect).abs());
                if sample_basis(&anti, &base, x, t, tol).is_ok() {
                    missed_degenerate += 1;
                }
            }
            None => missed_degenerate += 1,
        }
    }
    out.at_most("endpoint_exactness", endpoint.0, 0.0);
    out.below("straight_line", line.0, 1e-12);
    out.below("intermediate_ratio", ratio.0, 1e-10);
    out.below("antipodal_parameter", antipodal_t.0, 1e-12);
    out.count("antipodal_detection", missed_degenerate);
    out.count("singular_intermediate_basis", singular_samples);

    // Type 1 at r₂ = r₁ to Type 6 at r₂ = 0 on a fixed base.
    let base = Spinor::new([C64::new(0.8, 0.1), C64::new(0.1, -0.3), C64::from_polar(0.7, 0.9), C64::new(-0.2, 0.4)]);
    let bil = compute_dirac(&base);
    let ab = (bil.a.re, bil.b.re);
    let from = PlaneCoords::new(ONE, ONE, BasisTag::B);
    let to = PlaneCoords::new(ONE, ZERO, BasisTag::B);
    let path = spinor_homotopy(&from, &to).expect("shared basis");
    let interior_type1 = sweep(&path, ONE, ab, &sweep_grid(64), &opt)
        .iter()
        .filter(|pt| pt.t < 1.0)
        .filter(|pt| !matches!(pt.classification, Some(c) if c.class == LounestoClass::Type1))
        .count();
    out.count("sweep_interior_type1", interior_type1);
    match find_transition(&path, ONE, ab, (0.0, 1.0), &opt, 200) {
        Ok(Some(tr)) if (tr.from, tr.to) == (LounestoClass::Type1, LounestoClass::Type6) => {
            out.count("transition_type1_to_type6", 0);
            out.observe("transition_parameter", tr.after);
            out.below("transition_width", tr.after - tr.before, 1e-12);
        }
        _ => out.count("transition_type1_to_type6", 1),
    }
}

fn mdo_suite(rng: &mut SuiteRng, trials: usize, tol: f64, out: &mut Collector) {
    let combos = [
        (Helicity::Plus, Conjugation::S),
        (Helicity::Plus, Conjugation::A),
        (Helicity::Minus, Conjugation::S),
        (Helicity::Minus, Conjugation::A),
    ];
    let (mut square, mut comm, mut structure) = (Max::new(), Max::new(), Max::new());
    let (mut helicity, mut conj, mut diraclike, mut chiral, mut norm_id) =
        (Max::new(), Max::new(), Max::new(), Max::new(), Max::new());
    let (mut swapped, mut flipped) = (Min::new(), Min::new());
    let mut eta_mismatch = 0;
    let (mut literal_slash, mut dirac_scalars, mut cross_helicity) = (Min::new(), Max::new(), Max::new());
    let mut sa = Max::new();
    for _ in 0..trials {
        let mom = random_momentum(rng);
        let x = xi(&mom);
        square.add(max_abs(&(x * x - Mat4::identity())));
        let ps = momentum_slash(&mom);
        comm.add(max_abs(&(x * ps - ps * x)));
        let lit = standard_slash(&mom);
        literal_slash.add(max_abs(&(x * lit - lit * x)));
        let op = mom.helicity_operator();
        let xi_size = max_abs(&x);
        for (h, c) in combos {
            let l = elko(&mom, h, c);
            let n = l.spinor.norm();
            structure.add(structure_defect(&l));
            let (top, bottom) = (l.spinor.block(Block::First), l.spinor.block(Block::Second));
            let hv = C64::from(h.value());
            helicity.add(((op * bottom - bottom * hv).norm() + (op * top + top * hv).norm()) / n);
            let cc = charge_conjugate(&l.spinor);
            conj.add(cc.max_diff(&l.spinor.scale(C64::from(c.sign().value()))) / n);
            let dl = diraclike_residual(&l, &mom);
            diraclike.add(dl.residual / (mom.m * n));
            flipped.add(dl.other / (mom.m * n));
            if dl.eta != c.diraclike_sign() {
                eta_mismatch += 1;
            }
            let cube = xi_size * n.powi(3);
            match (
                chiral_relation_residuals(&l.spinor, &mom),
                chiral_relation_residuals_with(&l.spinor, &mom, Block::Second),
            ) {
                (Ok(r), Ok(s)) => {
                    chiral.add(r.into_iter().fold(0.0, f64::max) / cube);
                    swapped.add(s.into_iter().fold(0.0, f64::max) / cube);
                }
                _ => chiral.add(f64::INFINITY),
            }
            match mdo_bilinears(&l.spinor, &mom) {
                Ok(b) => norm_id.add(fpk_residuals(&b).norm / (xi_size * n * n).powi(2)),
                Err(_) => norm_id.add(f64::INFINITY),
            }
            let d = compute_dirac(&l.spinor);
            dirac_scalars.add(d.a.norm().max(d.b.norm()) / d.scale);
        }
        let [ps_, pa, ms, _] = combos.map(|(h, c)| elko(&mom, h, c).spinor);
        sa.add(sa_relation().apply(&ps_).max_diff(&pa));
        cross_helicity.add(phase_alignment(&ps_, &ms));
    }
    out.below("xi_involution", square.0, 1e-11);
    out.below("xi_commutes_with_slash", comm.0, 1e-11);
    out.at_most("elko_structure", structure.0, 0.0);
    out.below("dual_helicity", helicity.0, 1e-12);
    out.below("charge_conjugation", conj.0, 1e-12);
    out.below("diraclike", diraclike.0, 1e-9);
    out.count("diraclike_sign_fixture", eta_mismatch);
    out.above("diraclike_flipped_sign", flipped.0, 1.0);
    out.below("chiral_relations", chiral.0, 1e-9);
    out.above("chiral_relations_swapped", swapped.0, 1e-3);
    out.below("mdo_norm_identity", norm_id.0, 1e-10);
    out.below("dirac_dual_scalars_vanish", dirac_scalars.0, 1e-12);
    out.at_most("sa_block_sign", sa.0, 0.0);
    out.observe("xi_commutator_literal_slash_min", literal_slash.0);
    out.observe("helicity_partner_phase_alignment_max", cross_helicity.0);

    let (mut fg, mut product) = (Max::new(), Max::new());
    for _ in 0..trials {
        let (_, bil) = random_base(rng, tol, 0.05);
        let p = random_params(rng, tol);
        let mom = random_momentum(rng);
        let Ok(pot) = potentials(&bil, &p, tol) else {
            fg.add(f64::INFINITY);
            continue;
        };
        for sign in [Sign::Plus, Sign::Minus] {
            let v = fg_functions(pot.s, pot.r, &p, &bil, &mom, sign);
            let size = v.exp_f_simplified.norm().max(v.exp_g_simplified.norm());
            fg.add(v.simplification_gap() / size);
            if sign == Sign::Minus {
                let prod = v.f.exp() * v.g.exp();
                let want = fg_minus_product(&p, &bil, &mom);
                product.add((prod - want).norm() / want.norm());
            }
        }
    }
    out.below("fg_simplification", fg.0, 1e-10);
    out.below("fg_minus_product", product.0, 1e-10);
}

fn props_suite(rng: &mut SuiteRng, trials: usize, tol: f64, out: &mut Collector) {
    let opt = ClassifyOptions { tol };
    let mut disagree = 0;
    let mut forbidden = 0;
    let mut single_block = 0;
    let (mut b_zero, mut a_zero) = (Max::new(), Max::new());
    let mut counts = [0usize; 6];
    for k in 0..trials {
        let (base, bil) = random_base(rng, tol, 0.0);
        let (a, b) = (bil.a.re, bil.b.re);
        let scale = rng.complex();
        let (r1, r2) = match k % 5 {
            0 => {
                let (r1, r2) = type2_coefficients(a, b);
                (r1 * scale, r2 * scale)
            }
            1 => {
                let (r1, r2) = type3_coefficients(a, b);
                (r1 * scale, r2 * scale)
            }
            2 => {
                if rng.coin() {
                    (scale, ZERO)
                } else {
                    (ZERO, scale)
                }
            }
            _ => (rng.complex(), rng.complex()),
        };
        let psi = MOperator::new(r1, r2).apply(&base);
        let full = compute_dirac(&psi);
        let brute = classify(&full, &opt).map(|c| c.class);
        let rule = classify_by_coefficients(r1, r2, a, b, &opt).map(|c| c.class);
        if brute != rule {
            disagree += 1;
        }
        if let Ok(c) = rule {
            counts[c.number() as usize - 1] += 1;
            if matches!(c, LounestoClass::Type4 | LounestoClass::Type5) {
                forbidden += 1;
            }
        }
        match k % 5 {
            0 => b_zero.add(full.b.norm() / full.scale),
            1 => a_zero.add(full.a.norm() / full.scale),
            2 if r2 == ZERO => {
                let k_max = full.k.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let s_max = full.s.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
                if !(k_max > tol * full.scale && s_max <= tol * full.scale) {
                    single_block += 1;
                }
            }
            _ => {}
        }
    }
    out.count("rule_matches_oracle", disagree);
    out.count("no_type4_or_type5", forbidden);
    out.below("type2_construction_b_vanishes", b_zero.0, tol);
    out.below("type3_construction_a_vanishes", a_zero.0, tol);
    out.count("single_block_currents", single_block);
    for (name, n) in ["type1_count", "type2_count", "type3_count", "type4_count", "type5_count", "type6_count"]
        .into_iter()
        .zip(counts)
    {
        out.observe(name, n as f64);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: usize) -> VerifyConfig {
        VerifyConfig { seed: 42, trials: Some(trials), tol: 1e-9 }
    }

    #[test]
    fn every_suite_passes_on_a_small_run() {
        let report = run_suites(&Suite::ALL, &cfg(50));
        for s in &report.suites {
            for c in &s.checks {
                assert!(c.passed, "{:?} {:?}", s.suite, c);
            }
        }
        assert!(report.passed);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_suites(&Suite::ALL, &cfg(20))).unwrap();
        let b = serde_json::to_string(&run_suites(&Suite::ALL, &cfg(20))).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&run_suites(&Suite::ALL, &VerifyConfig { seed: 43, ..cfg(20) })).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("all"), None);
    }
}
