//! CSV and text formats.
//!
//! * sampled function: a record `n,M,L[,r_supp]`, then one value per record in row-major order
//! * sinogram: a record `P,Q,n`, then records `p,omega_index,value`; the direction
//!   table is written alongside as `omega_index,components...,weight`
//! * vector-valued transform: records `r,omega_index,re,im`
//! * zonal profile: records `t,value` (an optional `t,value` header is skipped)
//! * polynomial: lines `coeff * x1^a1 x2^a2 ...`

use std::fs::File;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use pwkit_core::grid::{GridSpec, SampledFunction};
use pwkit_core::radon::Sinogram;
use pwkit_core::slice::VectorFT;
use pwkit_core::sphere::ZonalProfile;
use pwkit_core::weyl::Polynomial;

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::WriterBuilder::new().flexible(true).from_path(path).with_context(|| format!("creating {}", path.display()))
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, what: &str) -> Result<T> {
    let raw = rec.get(i).with_context(|| format!("missing {what}"))?;
    raw.parse().map_err(|_| anyhow::anyhow!("cannot parse {what} from `{raw}`"))
}

pub fn read_function(path: &Path) -> Result<SampledFunction> {
    let mut rd = reader(path)?;
    let mut records = rd.records();
    let head = records.next().context("empty function file")??;
    let n: usize = field(&head, 0, "dimension n")?;
    let m: usize = field(&head, 1, "points per axis M")?;
    let l: f64 = field(&head, 2, "half width L")?;
    let support: Option<f64> = if head.len() > 3 && !head[3].is_empty() { Some(field(&head, 3, "support radius")?) } else { None };
    let grid = GridSpec::new(n, m, l)?;
    let mut values = Vec::with_capacity(grid.len());
    for rec in records {
        values.push(field::<f64>(&rec?, 0, "sample value")?);
    }
    ensure!(values.len() == grid.len(), "expected {} samples, found {}", grid.len(), values.len());
    Ok(SampledFunction::new(grid, values, support)?)
}

pub fn write_function(f: &SampledFunction, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let g = f.grid();
    let mut head = vec![g.dim().to_string(), g.points().to_string(), g.half_width().to_string()];
    if let Some(r) = f.support() {
        head.push(r.to_string());
    }
    w.write_record(&head)?;
    for v in f.values() {
        w.write_record([v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sinogram(s: &Sinogram, path: &Path, directions: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let (p, q) = (s.offsets().len(), s.directions().len());
    w.write_record([p.to_string(), q.to_string(), s.dim().to_string()])?;
    for j in 0..q {
        for i in 0..p {
            w.write_record([s.offsets().value(i).to_string(), j.to_string(), s.get(i, j).to_string()])?;
        }
    }
    w.flush()?;
    let mut d = writer(directions)?;
    let dirs = s.directions();
    for j in 0..q {
        let mut rec = vec![j.to_string()];
        rec.extend(dirs.point(j).iter().map(|c| c.to_string()));
        rec.push(dirs.weight(j).to_string());
        d.write_record(&rec)?;
    }
    d.flush()?;
    Ok(())
}

pub fn write_vector_ft(ft: &VectorFT, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    for (i, r) in ft.radii().iter().enumerate() {
        for j in 0..ft.directions().len() {
            let v = ft.get(i, j);
            w.write_record([r.to_string(), j.to_string(), v.re.to_string(), v.im.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_profile(path: &Path, n: usize) -> Result<ZonalProfile> {
    let mut rd = reader(path)?;
    let mut ts = Vec::new();
    let mut vs = Vec::new();
    for (k, rec) in rd.records().enumerate() {
        let rec = rec?;
        if k == 0 && rec.get(0).is_some_and(|s| s.parse::<f64>().is_err()) {
            continue;
        }
        ts.push(field::<f64>(&rec, 0, "angle t")?);
        vs.push(field::<f64>(&rec, 1, "profile value")?);
    }
    ensure!(ts.len() >= 2, "profile needs at least two samples");
    let dt = std::f64::consts::PI / (ts.len() - 1) as f64;
    for (k, t) in ts.iter().enumerate() {
        if (t - k as f64 * dt).abs() > 1e-9 {
            bail!("profile angles must be equispaced on [0, pi]; sample {k} is at {t}");
        }
    }
    Ok(ZonalProfile::new(n, vs, None)?)
}

pub fn write_profile(f: &ZonalProfile, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["t", "value"])?;
    for (k, v) in f.samples().iter().enumerate() {
        w.write_record([f.angle(k).to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_polynomial(path: &Path, nvars: usize) -> Result<Polynomial> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Polynomial::parse(&text, nvars)?)
}
