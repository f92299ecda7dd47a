//! The fixed list of verification checks and the runner that evaluates them.
//!
//! Each check reduces to one non-negative residual compared against a
//! tolerance. Random inputs come from a ChaCha8 generator seeded by the run
//! seed, with one independent stream per check so that selecting a subset of
//! checks does not change any residual.

use std::f64::consts::PI;
use std::sync::Arc;

use massless_core::convergence::{fit_order, max_constant};
use massless_core::coset::{
    classify_double_coset, cocycle, coset_action, double_coset_link, numeric_jacobian,
    CosetLabel, DoubleCosetClass,
};
use massless_core::function_space::{
    inner_product, make_gaussian_probe, norm, quadrature_self_test, reference_probe, sample,
    AnalyticTestFunction, Grid,
};
use massless_core::group::{
    coset_representative, inverse, is_in_h1, is_isotropy_element, isotropy_defect, make_h1,
    make_h2, make_isotropy, GroupElement, HermitianMomentumMatrix,
};
use massless_core::induced::{
    apply_u, induced_action_from_cocycle, intertwiner_v, regular_translation,
    TranslationParameter,
};
use massless_core::momentum::{
    antisymmetry_residual, apply_b, apply_b_unshifted, apply_pi, commutator_residual,
    gauge_form_value, limit_oracle_errors, pi_symmetry_residual, Direction,
};
use massless_core::spectral::{
    apply_p_squared, bessel_mode, build_wavepacket, discrete_polar_helmholtz_residual,
    eigencheck, polar_p_squared_oracle, WavepacketSpec,
};
use massless_core::{Complex64, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, RunConfig};
use crate::report::{CheckRecord, Report};

/// Tolerance class of exact algebraic identities.
pub const ALGEBRAIC: f64 = 1e-10;
/// Tolerance class of identities that go through grid quadrature.
pub const QUADRATURE: f64 = 1e-7;
/// Tolerance of checks whose residual counts violations.
pub const COUNT: f64 = 0.5;

macro_rules! checks {
    ($($variant:ident => $id:literal, $tol:expr, $anchor:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId { $($variant,)* }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$variant => $id,)* }
            }

            pub fn default_tolerance(self) -> f64 {
                match self { $(CheckId::$variant => $tol,)* }
            }

            /// What the check establishes, in words.
            pub fn anchor(self) -> &'static str {
                match self { $(CheckId::$variant => $anchor,)* }
            }

            pub fn parse(id: &str) -> Option<CheckId> {
                match id { $($id => Some(CheckId::$variant),)* _ => None }
            }
        }
    };
}

checks! {
    IsotropyMembership => "isotropy_membership", ALGEBRAIC,
        "isotropy group |a| = 1, c = 0 fixes the light-like momentum";
    IsotropyRejection => "isotropy_rejection", COUNT,
        "triangular elements with |lambda| != 1 do not fix the momentum";
    GroupClosure => "group_closure", ALGEBRAIC,
        "SL(2,C) closure, inverses and associativity";
    CocycleJacobian => "cocycle_jacobian", 1e-6,
        "cocycle equals the area Jacobian of the coset action";
    CocycleMultiplicativity => "cocycle_multiplicativity", 1e-9,
        "cocycle chain rule along composed actions";
    CosetTransitivity => "coset_transitivity", ALGEBRAIC,
        "translations act transitively on nonzero coset labels";
    StabilizerTriviality => "stabilizer_triviality", COUNT,
        "stabilizer of the double-coset representative is trivial";
    DoubleCosetClassification => "double_coset_classification", COUNT,
        "two double cosets, told apart by H1 membership";
    QuadratureReference => "quadrature_reference", 1e-8,
        "weighted norm of |z|^2 exp(-|z|^2) equals pi/2";
    QuadratureSelfTest => "quadrature_self_test", ALGEBRAIC,
        "annulus quadrature against its exact value";
    Unitarity => "unitarity", QUADRATURE,
        "translation representation preserves the weighted inner product";
    GroupLaw => "group_law", 1e-12,
        "translation representation composes additively";
    CocycleConstruction => "cocycle_construction", 1e-12,
        "square-root cocycle construction matches the closed form";
    Intertwiner => "intertwiner", 1e-12,
        "equivalence with the regular representation of the translations";
    GeneratorLimitOrder => "generator_limit_order", 0.1,
        "difference quotients of the representation converge to B_i at order 1";
    GeneratorLimitRichardson => "generator_limit_richardson", 0.2,
        "extrapolated difference quotients converge to B_i at order 2";
    Commutator => "commutator", ALGEBRAIC,
        "generators commute";
    Antisymmetry => "antisymmetry", QUADRATURE,
        "generators are antisymmetric";
    PiSymmetry => "pi_symmetry", QUADRATURE,
        "momentum operators are symmetric";
    UnshiftedGenerators => "unshifted_generators", 1e-12,
        "generators agree before and after the coordinate shift";
    GaugeForm => "gauge_form", 1e-12,
        "generators are conjugated partial derivatives";
    PSquaredPolar => "p_squared_polar", 1e-9,
        "P^2 matches its polar-coordinate form";
    PSquaredCommutes => "p_squared_commutes", 1e-9,
        "P^2 commutes with both momentum operators";
    EigenResiduals => "eigen_residuals", ALGEBRAIC,
        "plane waves are joint eigenfunctions of the momentum operators";
    EigenvalueExact => "eigenvalue_exact", ALGEBRAIC,
        "plane-wave P^2 eigenvalue is |k|^2";
    BesselMode => "bessel_mode", 1e-8,
        "radial Bessel mode solves the polar Helmholtz equation";
    PacketTransport => "packet_transport", ALGEBRAIC,
        "translated wavepacket profiles shift rigidly";
    PacketRefinement => "packet_refinement", 1e-6,
        "wavepacket norms and overlaps are stable under spectral refinement";
    PacketConjugateSymmetry => "packet_conjugate_symmetry", 1e-12,
        "wavepacket overlaps are conjugate symmetric";
}

impl CheckId {
    fn stream(self) -> u64 {
        CheckId::ALL.iter().position(|c| *c == self).expect("listed") as u64
    }
}

/// Why a check could not produce a residual.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckFailure {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Degenerate(&'static str),
}

type Outcome = Result<f64, CheckFailure>;

/// Shared immutable inputs of one run.
pub struct Context<'a> {
    pub config: &'a RunConfig,
    pub grid: Arc<Grid>,
}

impl Context<'_> {
    fn rng(&self, id: CheckId) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(id.stream());
        rng
    }
}

/// Runs the selected checks (all when none are selected) in list order.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    config.validate()?;
    let grid = Grid::new(config.grid.spec()?).map_err(|e| ConfigError::Invalid {
        field: "grid",
        reason: e.to_string(),
    })?;
    let ctx = Context { config, grid };
    let selected: Vec<CheckId> = match &config.checks {
        None => CheckId::ALL.to_vec(),
        Some(ids) => CheckId::ALL
            .iter()
            .copied()
            .filter(|c| ids.iter().any(|id| id == c.as_str()))
            .collect(),
    };
    let records = selected
        .into_iter()
        .map(|id| {
            let tolerance = config.tolerance(id);
            CheckRecord::new(id.as_str(), id.anchor(), tolerance, run_check(id, &ctx))
        })
        .collect();
    Ok(Report::new(records, config.seed, config.digest()))
}

pub fn run_check(id: CheckId, ctx: &Context<'_>) -> Outcome {
    let mut rng = ctx.rng(id);
    let rng = &mut rng;
    match id {
        CheckId::IsotropyMembership => isotropy_membership(rng),
        CheckId::IsotropyRejection => isotropy_rejection(rng),
        CheckId::GroupClosure => group_closure(rng),
        CheckId::CocycleJacobian => cocycle_jacobian(rng),
        CheckId::CocycleMultiplicativity => cocycle_multiplicativity(rng),
        CheckId::CosetTransitivity => coset_transitivity(rng),
        CheckId::StabilizerTriviality => stabilizer_triviality(rng),
        CheckId::DoubleCosetClassification => double_coset_classification(rng),
        CheckId::QuadratureReference => quadrature_reference(ctx),
        CheckId::QuadratureSelfTest => Ok(quadrature_self_test(ctx.grid.spec())?),
        CheckId::Unitarity => unitarity(ctx, rng),
        CheckId::GroupLaw => group_law(ctx, rng),
        CheckId::CocycleConstruction => cocycle_construction(ctx, rng),
        CheckId::Intertwiner => intertwiner(ctx, rng),
        CheckId::GeneratorLimitOrder => generator_limit(ctx, rng, false),
        CheckId::GeneratorLimitRichardson => generator_limit(ctx, rng, true),
        CheckId::Commutator => commutator(ctx, rng),
        CheckId::Antisymmetry => pairing(ctx, rng, false),
        CheckId::PiSymmetry => pairing(ctx, rng, true),
        CheckId::UnshiftedGenerators => unshifted_generators(ctx, rng),
        CheckId::GaugeForm => gauge_form(ctx, rng),
        CheckId::PSquaredPolar => p_squared_polar(ctx, rng),
        CheckId::PSquaredCommutes => p_squared_commutes(ctx, rng),
        CheckId::EigenResiduals => eigen(ctx, rng, false),
        CheckId::EigenvalueExact => eigen(ctx, rng, true),
        CheckId::BesselMode => bessel(ctx),
        CheckId::PacketTransport => packet_transport(ctx),
        CheckId::PacketRefinement => packet_refinement(ctx),
        CheckId::PacketConjugateSymmetry => packet_conjugate_symmetry(ctx),
    }
}

// Random inputs

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI))
}

fn in_annulus(rng: &mut ChaCha8Rng, inner: f64, outer: f64) -> Complex64 {
    let r = rng.random_range(inner..outer);
    Complex64::from_polar(r, rng.random_range(0.0..2.0 * PI))
}

/// A random element with entries of moderate size and `|g11| ≥ 0.3`.
fn random_sl2(rng: &mut ChaCha8Rng) -> GroupElement {
    loop {
        let a = in_disk(rng, 2.0);
        if a.norm() < 0.3 {
            continue;
        }
        let b = in_disk(rng, 2.0);
        let c = in_disk(rng, 2.0);
        let d = (Complex64::new(1.0, 0.0) + b * c) / a;
        if let Ok(g) = GroupElement::from_entries(a, b, c, d) {
            return g;
        }
    }
}

fn random_probe(ctx: &Context<'_>, rng: &mut ChaCha8Rng, m: i32) -> AnalyticTestFunction {
    let p = &ctx.config.probes;
    let center = in_disk(rng, p.center_radius);
    let width = if p.width_max > p.width_min {
        rng.random_range(p.width_min..p.width_max)
    } else {
        p.width_min
    };
    make_gaussian_probe(center, width, m).expect("validated width")
}

fn random_index(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> i32 {
    let max = ctx.config.probes.max_angular_index;
    rng.random_range(-max..=max)
}

fn random_indexed_probe(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> AnalyticTestFunction {
    let m = random_index(ctx, rng);
    random_probe(ctx, rng, m)
}

fn random_beta(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> TranslationParameter {
    TranslationParameter(in_disk(rng, ctx.config.probes.beta_radius))
}

// Group and coset geometry

fn isotropy_membership(rng: &mut ChaCha8Rng) -> Outcome {
    let p = HermitianMomentumMatrix::reference();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = make_isotropy(rng.random_range(0.0..2.0 * PI), in_disk(rng, 3.0));
        worst = worst.max(isotropy_defect(&a, &p));
    }
    Ok(worst)
}

fn isotropy_rejection(rng: &mut ChaCha8Rng) -> Outcome {
    let p = HermitianMomentumMatrix::reference();
    let mut accepted = 0usize;
    let mut drawn = 0usize;
    while drawn < 1000 {
        let modulus = rng.random_range(0.2..5.0f64);
        if (modulus - 1.0).abs() <= 1e-3 {
            continue;
        }
        drawn += 1;
        let lambda = Complex64::from_polar(modulus, rng.random_range(0.0..2.0 * PI));
        let h = make_h1(lambda, in_disk(rng, 3.0))?;
        if is_isotropy_element(&h, &p) {
            accepted += 1;
        }
    }
    Ok(accepted as f64)
}

fn group_closure(rng: &mut ChaCha8Rng) -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (g, h, k) = (random_sl2(rng), random_sl2(rng), random_sl2(rng));
        let gh = g * h;
        let scale = 1.0 + g.matrix().max_abs() * h.matrix().max_abs() * k.matrix().max_abs();
        worst = worst
            .max((gh.det() - one).norm() / (1.0 + gh.matrix().max_abs().powi(2)))
            .max((g * inverse(&g)).max_abs_diff(&GroupElement::identity()) / (1.0 + g.matrix().max_abs().powi(2)))
            .max((gh * k).max_abs_diff(&(g * (h * k))) / scale);
    }
    Ok(worst)
}

fn cocycle_jacobian(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < 100 {
        let z = in_disk(rng, 1.5);
        let g = random_sl2(rng);
        // Stay on the big cell, away from the pole of the action.
        if (g.g12() * z + g.g22()).norm() < 0.5 {
            continue;
        }
        drawn += 1;
        let analytic = cocycle(CosetLabel(z), &g)?.value();
        let numeric = numeric_jacobian(CosetLabel(z), &g, 1e-4)?;
        worst = worst.max((analytic - numeric).abs() / analytic.max(1.0));
    }
    Ok(worst)
}

fn cocycle_multiplicativity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut drawn = 0;
    while drawn < 1000 {
        let z = CosetLabel(in_disk(rng, 1.5));
        let (g, h) = (random_sl2(rng), random_sl2(rng));
        let Ok((image, _)) = coset_action(z, &g) else { continue };
        let (Ok(direct), Ok(first), Ok(second)) = (cocycle(z, &(g * h)), cocycle(z, &g), cocycle(image, &h))
        else {
            continue;
        };
        drawn += 1;
        let (lhs, rhs) = (direct.value(), first.value() * second.value());
        worst = worst.max((lhs - rhs).abs() / lhs.max(rhs));
    }
    Ok(worst)
}

fn coset_transitivity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = in_annulus(rng, 1e-2, 3.0);
        let w = in_annulus(rng, 1e-2, 3.0);
        let beta = double_coset_link(z, w)?;
        let (forward, _) = coset_action(CosetLabel(z), &make_h2(-beta))?;
        let (back, _) = coset_action(CosetLabel(w), &make_h2(beta))?;
        worst = worst.max((forward.z() - w).norm()).max((back.z() - z).norm());
    }
    Ok(worst)
}

fn stabilizer_triviality(rng: &mut ChaCha8Rng) -> Outcome {
    let d = coset_representative();
    let d_inv = inverse(&d);
    let conjugate = |beta: Complex64| d_inv * make_h2(beta) * d;
    let mut violations = usize::from(!is_in_h1(&conjugate(Complex64::new(0.0, 0.0))));
    for _ in 0..1000 {
        if is_in_h1(&conjugate(in_annulus(rng, 1e-3, 3.0))) {
            violations += 1;
        }
    }
    Ok(violations as f64)
}

fn double_coset_classification(rng: &mut ChaCha8Rng) -> Outcome {
    let mut mismatches = 0usize;
    for n in 0..1000 {
        let g = if n % 2 == 0 {
            let lambda = in_annulus(rng, 0.3, 3.0);
            make_h1(lambda, in_disk(rng, 3.0))?
        } else {
            random_sl2(rng)
        };
        let class = classify_double_coset(&g);
        let agrees = (class.class == DoubleCosetClass::IdentityCoset) == is_in_h1(&g);
        let rebuilt = match &class.witness {
            None => true,
            Some(w) => {
                w.product().max_abs_diff(&g) <= 1e-9 * (1.0 + g.matrix().max_abs()) && is_in_h1(&w.h1)
            }
        };
        if !(agrees && rebuilt) {
            mismatches += 1;
        }
    }
    Ok(mismatches as f64)
}

// Hilbert space and the representation

fn quadrature_reference(ctx: &Context<'_>) -> Outcome {
    let f = sample(&reference_probe(), &ctx.grid);
    let value = inner_product(&f, &f)?;
    Ok((value - Complex64::new(PI / 2.0, 0.0)).norm())
}

fn unitarity(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        // Shared angular index keeps the integrand smooth at the origin.
        let m = random_index(ctx, rng);
        let f = random_probe(ctx, rng, m);
        let g = random_probe(ctx, rng, m);
        let before = inner_product(&sample(&f, &ctx.grid), &sample(&g, &ctx.grid))?;
        for _ in 0..20 {
            let beta = random_beta(ctx, rng);
            let uf = sample(&apply_u(beta, &f)?, &ctx.grid);
            let ug = sample(&apply_u(beta, &g)?, &ctx.grid);
            let after = inner_product(&uf, &ug)?;
            worst = worst.max((after - before).norm() / (1.0 + before.norm()));
        }
    }
    Ok(worst)
}

fn group_law(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        let (b1, b2) = (random_beta(ctx, rng), random_beta(ctx, rng));
        let twice = apply_u(b1, &apply_u(b2, &f)?)?;
        let once = apply_u(TranslationParameter(b1.0 + b2.0), &f)?;
        for _ in 0..100 {
            let z = in_disk(rng, 4.0);
            worst = worst.max((twice.value(z) - once.value(z)).norm());
        }
    }
    Ok(worst)
}

fn cocycle_construction(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        let beta = random_beta(ctx, rng);
        let direct = apply_u(beta, &f)?;
        let via = induced_action_from_cocycle(beta, &f)?;
        for _ in 0..50 {
            let z = in_disk(rng, 4.0);
            if z.norm() < 1e-6 || (z + beta.0).norm() < 1e-6 {
                continue;
            }
            worst = worst.max((direct.value(z) - via.value(z)?).norm());
        }
    }
    Ok(worst)
}

/// `V·U(β)f` against `T(β)·Vf` on the grid nodes, with the left side taken
/// both from the closed form and from the cocycle construction.
fn intertwiner(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        let beta = random_beta(ctx, rng);
        let closed = intertwiner_v(&apply_u(beta, &f)?)?;
        let via = induced_action_from_cocycle(beta, &f)?;
        let rhs = regular_translation(beta, &intertwiner_v(&f)?);
        for z in ctx.grid.nodes() {
            let target = rhs.value(*z);
            worst = worst.max((closed.value(*z) - target).norm());
            match via.value(*z) {
                Ok(v) => worst = worst.max((v / z.norm_sqr() - target).norm()),
                Err(Error::BigCellViolation(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(worst)
}

// Generators and momentum operators

/// Worst deviation of the fitted convergence order from its nominal value
/// over m = 0 probes, both directions.
fn generator_limit(ctx: &Context<'_>, rng: &mut ChaCha8Rng, extrapolated: bool) -> Outcome {
    let etas = &ctx.config.probes.eta_ladder;
    let nominal = if extrapolated { 2.0 } else { 1.0 };
    let mut worst = 0.0f64;
    for _ in 0..ctx.config.probes.limit_probes {
        let f = random_probe(ctx, rng, 0);
        for direction in Direction::BOTH {
            let (plain, rich) = limit_oracle_errors(direction, &f, etas, &ctx.grid)?;
            let errors = if extrapolated { rich } else { plain };
            let order = fit_order(etas, &errors)
                .ok_or(CheckFailure::Degenerate("errors do not admit a power-law fit"))?;
            if !max_constant(etas, &errors, nominal).is_finite() {
                return Err(CheckFailure::Degenerate("unbounded convergence constant"));
            }
            worst = worst.max((order - nominal).abs());
        }
    }
    Ok(worst)
}

fn commutator(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        worst = worst.max(commutator_residual(&f, &ctx.grid)?);
    }
    Ok(worst)
}

/// Residuals scaled by `‖f‖·‖g‖`, over m = 0 pairs so that derivatives stay
/// smooth at the origin.
fn pairing(ctx: &Context<'_>, rng: &mut ChaCha8Rng, momentum: bool) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_probe(ctx, rng, 0);
        let g = random_probe(ctx, rng, 0);
        let scale = norm(&sample(&f, &ctx.grid)) * norm(&sample(&g, &ctx.grid));
        for direction in Direction::BOTH {
            let residual = if momentum {
                pi_symmetry_residual(direction, &f, &g, &ctx.grid)?
            } else {
                antisymmetry_residual(direction, &f, &g, &ctx.grid)?
            };
            worst = worst.max(residual / scale);
        }
    }
    Ok(worst)
}

fn unshifted_generators(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let one = Complex64::new(1.0, 0.0);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        let relabeled = f.translate(one);
        for direction in Direction::BOTH {
            let shifted = apply_b(direction, &f)?;
            let unshifted = apply_b_unshifted(direction, &relabeled)?;
            for _ in 0..25 {
                let z_unshifted = in_disk(rng, 4.0) - one;
                worst = worst.max((unshifted.value(z_unshifted) - shifted.value(z_unshifted + one)).norm());
            }
        }
    }
    Ok(worst)
}

fn gauge_form(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        for direction in Direction::BOTH {
            let b = apply_b(direction, &f)?;
            for _ in 0..25 {
                let z = in_annulus(rng, 1e-3, 4.0);
                worst = worst.max((b.value(z) - gauge_form_value(direction, &f, z)?).norm());
            }
        }
    }
    Ok(worst)
}

// Spectral problem

fn p_squared_polar(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_indexed_probe(ctx, rng);
        let a = sample(&apply_p_squared(&f)?, &ctx.grid);
        let b = sample(&polar_p_squared_oracle(&f)?, &ctx.grid);
        worst = worst.max(a.max_abs_diff(&b)?);
    }
    Ok(worst)
}

fn p_squared_commutes(ctx: &Context<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let f = random_indexed_probe(ctx, rng);
        let p2 = apply_p_squared(&f)?;
        for direction in Direction::BOTH {
            let a = sample(&apply_p_squared(&apply_pi(direction, &f)?)?, &ctx.grid);
            let b = sample(&apply_pi(direction, &p2)?, &ctx.grid);
            worst = worst.max(a.max_abs_diff(&b)?);
        }
    }
    Ok(worst)
}

fn eigen(ctx: &Context<'_>, rng: &mut ChaCha8Rng, eigenvalue: bool) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let k = in_disk(rng, 10.0);
        let res = eigencheck(k.re, k.im, &ctx.grid)?;
        worst = worst.max(if eigenvalue {
            (res.p2_eigenvalue - k.norm_sqr()).abs()
        } else {
            res.max()
        });
    }
    Ok(worst)
}

/// Discrete Helmholtz residual of the `k = 1` mode, and its pointwise `P²`
/// eigen-residual from the exact operators.
fn bessel(ctx: &Context<'_>) -> Outcome {
    let mode = bessel_mode(1.0);
    let discrete = discrete_polar_helmholtz_residual(&mode, 1.0, &ctx.grid)?;
    let exact = sample(&apply_p_squared(&mode)?, &ctx.grid).max_abs_diff(&sample(&mode, &ctx.grid))?;
    Ok(discrete.max(exact))
}

fn packet_transport(ctx: &Context<'_>) -> Outcome {
    let packet = build_wavepacket(&ctx.config.wavepacket.spec())?;
    let beta = ctx.config.wavepacket.beta();
    let moved = apply_u(TranslationParameter(beta), packet.function())?;
    let mut worst = 0.0f64;
    for z in ctx.grid.nodes() {
        let profile = moved.value(*z) / z.norm_sqr();
        worst = worst.max((profile - packet.psi(z + beta)).norm());
    }
    Ok(worst)
}

fn companion_spec(spec: &WavepacketSpec) -> WavepacketSpec {
    let mut other = spec.clone();
    other.k0 = [spec.k0[0] + 0.3, spec.k0[1] - 0.2];
    other.sigma = 1.2 * spec.sigma;
    other
}

fn refined(spec: &WavepacketSpec) -> WavepacketSpec {
    let mut finer = spec.clone();
    finer.n_k *= 2;
    finer
}

fn packet_refinement(ctx: &Context<'_>) -> Outcome {
    let spec = ctx.config.wavepacket.spec();
    let other = companion_spec(&spec);
    let sampled = |s: &WavepacketSpec| -> Result<_, CheckFailure> {
        Ok(sample(build_wavepacket(s)?.function(), &ctx.grid))
    };
    let (a, a_fine) = (sampled(&spec)?, sampled(&refined(&spec))?);
    let (b, b_fine) = (sampled(&other)?, sampled(&refined(&other))?);
    let (na, na_fine) = (norm(&a), norm(&a_fine));
    let cross = inner_product(&a, &b)?;
    let cross_fine = inner_product(&a_fine, &b_fine)?;
    let norm_change = (na - na_fine).abs() / na_fine;
    let cross_change = (cross - cross_fine).norm() / (na_fine * norm(&b_fine));
    Ok(norm_change.max(cross_change))
}

fn packet_conjugate_symmetry(ctx: &Context<'_>) -> Outcome {
    let spec = ctx.config.wavepacket.spec();
    let a = sample(build_wavepacket(&spec)?.function(), &ctx.grid);
    let b = sample(build_wavepacket(&companion_spec(&spec))?.function(), &ctx.grid);
    let ab = inner_product(&a, &b)?;
    let ba = inner_product(&b, &a)?;
    Ok((ab - ba.conj()).norm() / (norm(&a) * norm(&b)))
}
