//! Certification pipelines: each check computes one defect and compares it
//! with its threshold.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::sync::OnceLock;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use pwkit_core::grid::{DirectionSet, GridSpec, SampledFunction};
use pwkit_core::pw::{extension_consistency_defect, homogeneity_defect, pw_seminorm, support_radius_estimate, ComplexGrid};
use pwkit_core::radon::{evenness_defect, radon_transform, OffsetGrid, Sinogram};
use pwkit_core::slice::{fourier_slice_defect, plancherel, projection_compatibility_defect, InversionPlan};
use pwkit_core::sphere::{sphere_slice, sphere_support_check, ZonalProfile};
use pwkit_core::weyl::{
    invariant_basis, is_invariant, ow1_lift, restricted_group, surjectivity_certificate, weyl_group, Family, Polynomial, Rational,
    RootSystemSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::{CheckRecord, Comparison};
use crate::suite::{seeded_suite, spatial_cases, support_cases, BumpSpec, CAP_ANGLES};

pub const PLUMBING: &str = "plumbing";
const EVENNESS: &str = "the Radon transform is even: Rf(-p, -w) = Rf(p, w)";
const RADON_SUPPORT: &str = "the Radon transform of a function supported in a ball vanishes for |p| beyond its radius";
const FOURIER_SLICE: &str = "Fourier slice identity: Ff(r w) is the 1-D Fourier transform of Rf(., w) at r";
const PLANCHEREL: &str = "motion-group Plancherel formula with measure sigma_n r^(n-1) dr";
const INVERSION: &str = "inversion formula through the motion-group spectrum";
const PROJECTION: &str = "integrating out coordinates commutes with the Radon transform";
const EXPONENTIAL_TYPE: &str = "classical Paley-Wiener theorem: exponential type equals the support radius";
const GROWTH: &str = "Paley-Wiener seminorms are finite exactly at exponential type 2 pi r";
const HOMOGENEITY: &str = "moment condition: the k-th moment is a homogeneous polynomial of degree k in w";
const EXTENSION: &str = "the continuation in the spectral parameter agrees with the continuation to the complexified sphere";
const SPHERE_SLICE: &str = "sphere Fourier-slice identity f(m) = c int cos((m + rho) t) R(f)(t) dt";
const SPHERE_SUPPORT: &str = "sphere support theorem: supp R(f) in [-r, r] iff supp f in the cap of radius r";
const RESTRICTION: &str = "restriction of W_n(k) to a_n is W(n); for type D it is the full hyperoctahedral group";
const SURJECTIVITY: &str = "restriction of W(k)-invariant polynomials onto W(n)-invariants is surjective";
const OBSTRUCTION: &str = "type D: the image of restriction is the span of invariants even in the Pfaffian";
const LIFT: &str = "invariant extension by averaging, Rais decomposition and lifting";

/// Sharpness of the cap bumps in the sphere slice checks.
pub const SLICE_CAP_SHARPNESS: f64 = 1.0;
/// Flatter caps for the support detection, whose threshold crossing is
/// otherwise several profile steps inside the true support.
pub const SUPPORT_CAP_SHARPNESS: f64 = 0.1;
/// Directions of the extension consistency check.
pub const EXTENSION_DIRECTIONS: usize = 16;
/// Equatorial directions of the projection check.
pub const PROJECTION_DIRECTIONS: usize = 16;

fn timed(name: &str, anchor: &str, f: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    let t = Instant::now();
    let mut r = f().unwrap_or_else(|e| CheckRecord::failed(name, anchor, &e));
    r.runtime = t.elapsed().as_secs_f64();
    r
}

/// A function under test, with its generating bump when known.
#[derive(Debug, Clone)]
pub struct Subject {
    pub name: String,
    pub function: SampledFunction,
    pub spec: Option<BumpSpec>,
}

impl Subject {
    /// Constructed support radius, falling back to the declared or measured one.
    pub fn support(&self) -> f64 {
        match &self.spec {
            Some(s) => s.support(),
            None => self.function.support().unwrap_or_else(|| self.function.effective_support()),
        }
    }
}

/// Direction set used for a grid dimension; three-dimensional inputs use the
/// Gauss product rule with band `Q / 8`.
pub fn directions_for(n: usize, q: usize) -> Result<DirectionSet> {
    Ok(if n == 2 { DirectionSet::circle(q)? } else { DirectionSet::sphere((q / 8).max(2))? })
}

pub struct Workspace<'a> {
    pub cfg: &'a RunConfig,
    pub subjects: Vec<Subject>,
    /// Seeded suite: the mesh-doubling check can regenerate the subjects.
    pub seeded: bool,
    sinograms: OnceLock<std::result::Result<Vec<Sinogram>, String>>,
}

impl<'a> Workspace<'a> {
    pub fn seeded(cfg: &'a RunConfig) -> Result<Self> {
        let grid = GridSpec::new(2, cfg.points, cfg.half_width)?;
        let subjects = seeded_suite(cfg.seed, cfg.suite_size, cfg.half_width)
            .into_iter()
            .enumerate()
            .map(|(i, spec)| Ok(Subject { name: format!("bump{i}"), function: spec.sample(grid)?, spec: Some(spec) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cfg, subjects, seeded: true, sinograms: OnceLock::new() })
    }

    pub fn from_function(cfg: &'a RunConfig, name: &str, function: SampledFunction) -> Self {
        let subject = Subject { name: name.to_owned(), function, spec: None };
        Self { cfg, subjects: vec![subject], seeded: false, sinograms: OnceLock::new() }
    }

    pub fn directions(&self, subject: &Subject) -> Result<DirectionSet> {
        directions_for(subject.function.grid().dim(), self.cfg.directions)
    }

    pub fn sinograms(&self) -> Result<&[Sinogram]> {
        let cell = self.sinograms.get_or_init(|| {
            self.subjects
                .par_iter()
                .map(|s| {
                    let dirs = self.directions(s)?;
                    Ok(radon_transform(&s.function, OffsetGrid::for_grid(s.function.grid()), &dirs)?)
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e: anyhow::Error| format!("{e:#}"))
        });
        cell.as_deref().map_err(|e| anyhow!("{e}"))
    }

    fn mesh_meta(&self, r: CheckRecord) -> CheckRecord {
        let dims: BTreeSet<usize> = self.subjects.iter().map(|s| s.function.grid().dim()).collect();
        let points: BTreeSet<usize> = self.subjects.iter().map(|s| s.function.grid().points()).collect();
        r.with("dimensions", dims).with("points", points).with("directions", self.cfg.directions).with("functions", self.subjects.len())
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

pub fn radon_checks(ws: &Workspace) -> Vec<CheckRecord> {
    let tol = &ws.cfg.tolerances;
    let even = timed("radon.evenness", EVENNESS, || {
        let d = ws.sinograms()?.iter().map(evenness_defect).collect::<pwkit_core::Result<Vec<_>>>()?;
        Ok(ws.mesh_meta(CheckRecord::new("radon.evenness", EVENNESS, max_of(d.iter().copied()), tol.evenness, Comparison::Below)))
    });
    let support = timed("radon.support", RADON_SUPPORT, || {
        let mut worst: f64 = 0.0;
        for (s, subj) in ws.sinograms()?.iter().zip(&ws.subjects) {
            let limit = subj.support() + subj.function.grid().spacing();
            for i in 0..s.offsets().len() {
                if s.offsets().value(i).abs() > limit {
                    for j in 0..s.directions().len() {
                        worst = worst.max(s.get(i, j).abs());
                    }
                }
            }
        }
        Ok(ws.mesh_meta(CheckRecord::new("radon.support", RADON_SUPPORT, worst, tol.radon_support, Comparison::Below)))
    });
    vec![even, support]
}

pub fn slice_checks(ws: &Workspace) -> Vec<CheckRecord> {
    let cfg = ws.cfg;
    let tol = &cfg.tolerances;
    let mut out = Vec::new();
    out.push(timed("slice.fourier_slice", FOURIER_SLICE, || {
        let d = ws
            .subjects
            .par_iter()
            .map(|s| Ok(fourier_slice_defect(&s.function, &ws.directions(s)?)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(ws
            .mesh_meta(CheckRecord::new("slice.fourier_slice", FOURIER_SLICE, max_of(d.iter().copied()), tol.fourier_slice, Comparison::Below))
            .with("per_function", d))
    }));
    let mut coarse = Vec::new();
    out.push(timed("slice.plancherel", PLANCHEREL, || {
        let reps = ws
            .subjects
            .par_iter()
            .map(|s| Ok(plancherel(&s.function, &ws.directions(s)?)?))
            .collect::<Result<Vec<_>>>()?;
        coarse = reps.iter().map(|r| r.defect).collect();
        Ok(ws
            .mesh_meta(CheckRecord::new("slice.plancherel", PLANCHEREL, max_of(coarse.iter().copied()), tol.plancherel, Comparison::Below))
            .with("per_function", &coarse)
            .with("r_max", reps.iter().map(|r| r.r_max).collect::<Vec<_>>()))
    }));
    if ws.seeded {
        out.push(timed("slice.plancherel_refinement", PLANCHEREL, || {
            if coarse.is_empty() {
                return Err(anyhow!("coarse Plancherel defects unavailable"));
            }
            let points = 2 * cfg.points - 1;
            let q = 2 * cfg.directions;
            let grid = GridSpec::new(2, points, cfg.half_width)?;
            let dirs = DirectionSet::circle(q)?;
            let fine = ws
                .subjects
                .par_iter()
                .map(|s| {
                    let spec = s.spec.as_ref().context("refinement needs a generated function")?;
                    Ok(plancherel(&spec.sample(grid)?, &dirs)?.defect)
                })
                .collect::<Result<Vec<f64>>>()?;
            let ratios: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| c / f).collect();
            let worst = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(CheckRecord::new("slice.plancherel_refinement", PLANCHEREL, worst, tol.plancherel_refinement, Comparison::Above)
                .with("fine_points", points)
                .with("fine_directions", q)
                .with("fine_defects", fine)
                .with("ratios", ratios))
        }));
    }
    out.push(timed("slice.inversion", INVERSION, || {
        let per = ws
            .subjects
            .par_iter()
            .enumerate()
            .map(|(idx, s)| {
                let f = &s.function;
                let plan = InversionPlan::new(f)?;
                let g = f.grid();
                let reach = s.support();
                let candidates: Vec<usize> = (0..g.len())
                    .filter(|&k| {
                        let x = g.node(k);
                        x[..g.dim()].iter().map(|c| c * c).sum::<f64>().sqrt() <= reach
                    })
                    .collect();
                let mut rng = ChaCha8Rng::seed_from_u64(ws.cfg.seed ^ (0x9e37_79b9 + idx as u64));
                let sup = f.max_abs();
                let mut worst: f64 = 0.0;
                for _ in 0..ws.cfg.inversion_nodes {
                    let k = candidates[rng.gen_range(0..candidates.len())];
                    let x = g.node(k);
                    let v = plan.eval(&x[..g.dim()]);
                    worst = worst.max((v - f.values()[k]).norm() / sup);
                }
                Ok((worst, plan.directions()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ws
            .mesh_meta(CheckRecord::new("slice.inversion", INVERSION, max_of(per.iter().map(|p| p.0)), tol.inversion, Comparison::Below))
            .with("nodes_per_function", ws.cfg.inversion_nodes)
            .with("per_function", per.iter().map(|p| p.0).collect::<Vec<_>>())
            .with("inversion_directions", per.iter().map(|p| p.1).collect::<Vec<_>>()))
    }));
    out.push(timed("slice.projection", PROJECTION, || {
        let spatial: Vec<SampledFunction> = if ws.seeded {
            let grid = GridSpec::new(3, cfg.points_3d, cfg.half_width)?;
            spatial_cases(cfg.half_width).iter().map(|b| b.sample(grid)).collect::<pwkit_core::Result<_>>()?
        } else {
            ws.subjects.iter().filter(|s| s.function.grid().dim() == 3).map(|s| s.function.clone()).collect()
        };
        if spatial.is_empty() {
            return Err(anyhow!("projection check needs a three-dimensional function"));
        }
        let d = spatial
            .par_iter()
            .map(|f| Ok(projection_compatibility_defect(f, PROJECTION_DIRECTIONS)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(CheckRecord::new("slice.projection", PROJECTION, max_of(d.iter().copied()), tol.projection, Comparison::Below)
            .with("points", spatial[0].grid().points())
            .with("directions", PROJECTION_DIRECTIONS)
            .with("per_function", d))
    }));
    out
}

/// `sup` of the seminorm for each imaginary extent.
fn seminorm_series(s: &Sinogram, order: u32, r: f64, base: &ComplexGrid, extents: &[f64]) -> Vec<f64> {
    extents.iter().map(|b| pw_seminorm(s, order, r, &base.with_b(*b))).collect()
}

pub fn pw_checks(ws: &Workspace) -> Vec<CheckRecord> {
    let cfg = ws.cfg;
    let tol = &cfg.tolerances;
    let mut out = Vec::new();
    out.push(timed("pw.support_estimate", EXPONENTIAL_TYPE, || {
        let cases: Vec<(SampledFunction, f64)> = if ws.seeded {
            let grid = GridSpec::new(2, cfg.points, cfg.half_width)?;
            support_cases(cfg.half_width).iter().map(|b| Ok((b.sample(grid)?, b.support()))).collect::<Result<_>>()?
        } else {
            ws.subjects.iter().map(|s| (s.function.clone(), s.support())).collect()
        };
        let ratios = cases
            .par_iter()
            .map(|(f, r)| {
                let dirs = directions_for(f.grid().dim(), cfg.directions)?;
                let s = radon_transform(f, OffsetGrid::for_grid(f.grid()), &dirs)?;
                Ok(support_radius_estimate(&s)? / r)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(CheckRecord::new("pw.support_estimate", EXPONENTIAL_TYPE, max_of(ratios.iter().map(|q| (q - 1.0).abs())), tol.support_estimate, Comparison::Below)
            .with("estimate_over_radius", ratios)
            .with("radii", cases.iter().map(|c| c.1).collect::<Vec<_>>())
            .with("points", cfg.points)
            .with("directions", cfg.directions))
    }));
    // growth under doubling of the imaginary extent of the mesh
    let growth = || -> Result<(Vec<f64>, Vec<f64>)> {
        let sinos = ws.sinograms()?;
        let per = ws
            .subjects
            .par_iter()
            .zip(sinos)
            .map(|(subj, s)| {
                let rs = subj.support();
                let base = ComplexGrid::new(8.0 / rs, 3.0 / rs, 17, 17)?;
                let extents = [3.0 / rs, 6.0 / rs, 12.0 / rs];
                let stable = seminorm_series(s, cfg.order, 2.0 * PI * rs, &base, &extents);
                let below = seminorm_series(s, cfg.order, PI * rs, &base, &extents);
                let stable_change = stable.windows(2).map(|w| (w[1] / w[0]).max(w[0] / w[1])).fold(0.0, f64::max);
                let growth = below.windows(2).map(|w| w[1] / w[0]).fold(f64::INFINITY, f64::min);
                Ok((stable_change, growth))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(per.into_iter().unzip())
    };
    let mut cached: Option<std::result::Result<(Vec<f64>, Vec<f64>), String>> = None;
    let mut growth_once = || cached.get_or_insert_with(|| growth().map_err(|e| format!("{e:#}"))).clone().map_err(|e| anyhow!(e));
    let growth_meta = |r: CheckRecord| r.with("mesh", "a = 8 / r_supp, 17 x 17, b in {3, 6, 12} / r_supp").with("order", cfg.order);
    out.push(timed("pw.growth_stable", GROWTH, || {
        let (stable, _) = growth_once()?;
        Ok(growth_meta(ws.mesh_meta(CheckRecord::new("pw.growth_stable", GROWTH, max_of(stable.iter().copied()), tol.growth_stable, Comparison::Below)))
            .with("type", "2 pi r_supp")
            .with("per_function", stable))
    }));
    out.push(timed("pw.growth_divergent", GROWTH, || {
        let (_, below) = growth_once()?;
        let worst = below.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(growth_meta(ws.mesh_meta(CheckRecord::new("pw.growth_divergent", GROWTH, worst, tol.growth_divergent, Comparison::Above)))
            .with("type", "pi r_supp")
            .with("per_function", below))
    }));
    out.push(timed("pw.homogeneity", HOMOGENEITY, || {
        let d = ws
            .sinograms()?
            .par_iter()
            .map(|s| Ok(homogeneity_defect(s, cfg.kmax)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok(ws
            .mesh_meta(CheckRecord::new("pw.homogeneity", HOMOGENEITY, max_of(d.iter().copied()), tol.homogeneity, Comparison::Below))
            .with("kmax", cfg.kmax)
            .with("per_function", d))
    }));
    out.push(timed("pw.violation", HOMOGENEITY, || {
        let s = &ws.sinograms()?[0];
        let bad = violating_sinogram(s)?;
        let d = homogeneity_defect(&bad, cfg.kmax)?;
        Ok(CheckRecord::new("pw.violation", HOMOGENEITY, d, tol.violation, Comparison::Above)
            .with("construction", "even profile in p times a degree-3 circular harmonic")
            .with("kmax", cfg.kmax))
    }));
    out.push(timed("pw.extension", EXTENSION, || {
        let d = ws
            .subjects
            .par_iter()
            .map(|s| {
                let n = s.function.grid().dim();
                let dirs = if n == 2 { DirectionSet::circle(EXTENSION_DIRECTIONS)? } else { DirectionSet::sphere(2)? };
                Ok(extension_consistency_defect(&s.function, &dirs, None)?)
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(ws
            .mesh_meta(CheckRecord::new("pw.extension", EXTENSION, max_of(d.iter().copied()), tol.extension, Comparison::Below))
            .with("mesh", "a = 4 / r, b = 1 / (2 pi r), 9 x 9")
            .with("extension_directions", EXTENSION_DIRECTIONS)
            .with("per_function", d))
    }));
    out
}

/// `g(p) Y_3(w)` with `int g != 0`: its zeroth moment is a degree-3
/// harmonic, which no function can produce.
pub fn violating_sinogram(like: &Sinogram) -> Result<Sinogram> {
    let width = 0.5 * like.offsets().max_abs().max(1e-9).min(1.0);
    let w2 = width * width;
    Ok(Sinogram::from_fn(*like.offsets(), like.directions().clone(), None, |p, w| {
        let g = if p.abs() < width { (1.0 - w2 / (w2 - p * p)).exp() } else { 0.0 };
        let c3 = 4.0 * w[0].powi(3) - 3.0 * w[0];
        g * std::f64::consts::SQRT_2 * c3
    })?)
}

pub fn sphere_checks(cfg: &RunConfig, profile: Option<&ZonalProfile>) -> Vec<CheckRecord> {
    let tol = &cfg.tolerances;
    let t_len = cfg.sphere_samples;
    let mut out = Vec::new();
    let slices = |n: usize| -> Result<Vec<(f64, pwkit_core::sphere::SphereSliceReport)>> {
        CAP_ANGLES
            .par_iter()
            .map(|&ts| Ok((ts, sphere_slice(&ZonalProfile::cap_bump(n, ts, t_len, SLICE_CAP_SHARPNESS)?, cfg.m_max)?)))
            .collect()
    };
    if let Some(p) = profile {
        let name = if p.dim() == 3 { "sphere.slice_s3" } else { "sphere.slice_s2" };
        let threshold = if p.dim() == 3 { tol.sphere_slice_s3 } else { tol.sphere_slice_s2 };
        out.push(timed(name, SPHERE_SLICE, || {
            let r = sphere_slice(p, cfg.m_max)?;
            Ok(CheckRecord::new(name, SPHERE_SLICE, r.defect, threshold, Comparison::Below)
                .with("samples", p.len())
                .with("m_max", cfg.m_max)
                .with("constant", r.constant)
                .with("constant_spread", r.spread))
        }));
        if p.dim() == 3 {
            out.push(timed("sphere.support", SPHERE_SUPPORT, || {
                let (a, b) = sphere_support_check(p)?;
                Ok(CheckRecord::new("sphere.support", SPHERE_SUPPORT, (a - b).abs() / p.step(), tol.sphere_support, Comparison::AtMost)
                    .with("profile_support", a)
                    .with("radon_support", b))
            }));
        }
        return out;
    }
    let mut spreads = Vec::new();
    for (n, name, threshold) in [(3, "sphere.slice_s3", tol.sphere_slice_s3), (2, "sphere.slice_s2", tol.sphere_slice_s2)] {
        out.push(timed(name, SPHERE_SLICE, || {
            let reps = slices(n)?;
            spreads.extend(reps.iter().map(|(ts, r)| (n, *ts, r.spread, r.constant)));
            Ok(CheckRecord::new(name, SPHERE_SLICE, max_of(reps.iter().map(|r| r.1.defect)), threshold, Comparison::Below)
                .with("samples", t_len)
                .with("m_max", cfg.m_max)
                .with("cap_angles", CAP_ANGLES)
                .with("per_cap", reps.iter().map(|r| r.1.defect).collect::<Vec<_>>()))
        }));
    }
    out.push(timed("sphere.constant", SPHERE_SLICE, || {
        if spreads.len() != 2 * CAP_ANGLES.len() {
            return Err(anyhow!("slice computations failed"));
        }
        Ok(CheckRecord::new("sphere.constant", SPHERE_SLICE, max_of(spreads.iter().map(|s| s.2)), tol.sphere_constant, Comparison::Below)
            .with("constants", spreads.iter().map(|s| (s.0, s.1, s.3)).collect::<Vec<_>>()))
    }));
    out.push(timed("sphere.support", SPHERE_SUPPORT, || {
        let gaps = CAP_ANGLES
            .par_iter()
            .map(|&ts| {
                let p = ZonalProfile::cap_bump(3, ts, t_len, SUPPORT_CAP_SHARPNESS)?;
                let (a, b) = sphere_support_check(&p)?;
                Ok(((a - b).abs() / p.step(), a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        // step counts are ratios of rounded angles
        let steps = max_of(gaps.iter().map(|g| g.0));
        Ok(CheckRecord::new("sphere.support", SPHERE_SUPPORT, steps, tol.sphere_support * (1.0 + 1e-9), Comparison::AtMost)
            .with("samples", t_len)
            .with("cap_angles", CAP_ANGLES)
            .with("detected", gaps.iter().map(|g| (g.1, g.2)).collect::<Vec<_>>()))
    }));
    out
}

fn spec(family: Family, k: usize) -> Result<RootSystemSpec> {
    Ok(RootSystemSpec::new(family, k)?)
}

/// Surjectivity certificate, or for type D with `n < k` the obstruction record.
pub fn certify(family: Family, k: usize, n: usize, d: usize) -> CheckRecord {
    let obstruction = family == Family::D && n < k;
    let (name, anchor) = if obstruction { ("weyl.obstruction", OBSTRUCTION) } else { ("weyl.surjectivity", SURJECTIVITY) };
    timed(name, anchor, || {
        let c = surjectivity_certificate(spec(family, k)?, spec(family, n)?, d)?;
        let show = |idx: &[usize]| idx.iter().map(|&i| c.downstairs.elements[i].to_string().trim().replace('\n', " + ")).collect::<Vec<_>>();
        let verified = c.verify();
        let mut rec = if obstruction {
            let odd: Vec<usize> = (0..c.downstairs.len()).filter(|&i| c.downstairs.is_odd(i)).collect();
            let mismatch = odd.iter().filter(|i| !c.unreachable.contains(i)).count() + c.unreachable.iter().filter(|i| !odd.contains(i)).count();
            let defect = mismatch + c.obstruction_dim.abs_diff(odd.len()) + usize::from(!verified);
            CheckRecord::new(name, anchor, defect as f64, 0.0, Comparison::AtMost)
                .with("obstruction", true)
                .with("obstruction_dim", c.obstruction_dim)
                .with("odd_invariants", odd.len())
                .with("unreachable", show(&c.unreachable))
        } else {
            let defect = c.unreachable.len() + usize::from(!verified);
            CheckRecord::new(name, anchor, defect as f64, 0.0, Comparison::AtMost).with("obstruction", false).with("unreachable", show(&c.unreachable))
        };
        rec = rec
            .with("family", family.letter().to_string())
            .with("k", k)
            .with("n", n)
            .with("d", d)
            .with("image_rank", c.image_rank)
            .with("target_dim", c.downstairs.len())
            .with("witnesses_verified", verified);
        Ok(rec)
    })
}

/// Random `W(n)`-invariant targets with small integer coordinates in the invariant basis.
pub fn random_targets(spec_n: RootSystemSpec, d: usize, count: usize, seed: u64) -> Result<Vec<Polynomial>> {
    let basis = invariant_basis(spec_n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            basis.elements.iter().fold(Polynomial::zero(spec_n.ambient()), |acc, b| {
                let c: i64 = rng.gen_range(-5..=5);
                acc.add(&b.scale(&Rational::from_integer(c.into())))
            })
        })
        .collect())
}

pub fn weyl_checks(cfg: &RunConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    out.push(timed("weyl.restriction", RESTRICTION, || {
        let mut failures = Vec::new();
        let mut cases = 0;
        for k in 3..=5 {
            for n in 2..k {
                cases += 2;
                let got: BTreeSet<_> = restricted_group(spec(Family::B, k)?, n)?.into_iter().collect();
                let want: BTreeSet<_> = weyl_group(spec(Family::B, n)?)?.into_iter().collect();
                if got != want {
                    failures.push(format!("B{k}->{n}"));
                }
                let d = restricted_group(spec(Family::D, k)?, n)?;
                let order: usize = (1 << n) * (1..=n).product::<usize>();
                let all_signs = (0..n).all(|i| d.iter().any(|w| w.perm() == (0..n).collect::<Vec<_>>() && w.signs()[i] == -1 && w.signs().iter().filter(|&&s| s < 0).count() == 1));
                if d.len() != order || !all_signs {
                    failures.push(format!("D{k}->{n}"));
                }
            }
        }
        Ok(CheckRecord::new("weyl.restriction", RESTRICTION, failures.len() as f64, 0.0, Comparison::AtMost)
            .with("cases", cases)
            .with("max_rank", 5)
            .with("failures", failures))
    }));
    out.push(certify(Family::B, 4, 2, cfg.weyl_degree));
    out.push(certify(Family::D, 5, 4, cfg.weyl_degree));
    out.push(timed("weyl.lift", LIFT, || {
        let (k, n) = (spec(Family::B, 4)?, spec(Family::B, 2)?);
        let d = cfg.weyl_degree.min(6);
        let targets = random_targets(n, d, cfg.lift_targets, cfg.seed)?;
        let group = weyl_group(k)?;
        let results: Vec<bool> = targets
            .par_iter()
            .map(|t| match ow1_lift(t, k, n, d) {
                Ok(h) => h.restrict(2) == *t && is_invariant(&h, &group),
                Err(_) => false,
            })
            .collect();
        let failures = results.iter().filter(|ok| !**ok).count();
        Ok(CheckRecord::new("weyl.lift", LIFT, failures as f64, 0.0, Comparison::AtMost)
            .with("pair", "B4 -> B2")
            .with("degree", d)
            .with("targets", targets.len()))
    }));
    out
}
