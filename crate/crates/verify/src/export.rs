//! CSV exports. Floats are written in shortest round-trip form.

use std::io::Write;

use massless_core::function_space::GridFunction;
use massless_core::spectral::{EigenResiduals, SpectralNode};
use massless_core::Complex64;

pub const GRID_HEADER: [&str; 4] = ["r", "theta", "re", "im"];
pub const EIGEN_HEADER: [&str; 5] = ["k1", "k2", "res_pi1", "res_pi2", "res_p2"];
pub const SPECTRUM_HEADER: [&str; 4] = ["k1", "k2", "re_a", "im_a"];

fn num(x: f64) -> String {
    x.to_string()
}

/// Grid samples in θ-major node order.
pub fn write_grid_function<W: Write>(out: W, f: &GridFunction) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GRID_HEADER)?;
    for (r, theta, v) in f.iter_polar() {
        w.write_record([num(r), num(theta), num(v.re), num(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

/// Samples at arbitrary points, in the grid-function column layout with the
/// polar coordinates of each point (`θ ∈ [0, 2π)`).
pub fn write_point_samples<W: Write>(out: W, samples: &[(Complex64, Complex64)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(GRID_HEADER)?;
    for (z, v) in samples {
        let (r, theta) = z.to_polar();
        let theta = if theta < 0.0 { theta + 2.0 * std::f64::consts::PI } else { theta };
        w.write_record([num(r), num(theta), num(v.re), num(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_eigen_table<W: Write>(out: W, rows: &[(f64, f64, EigenResiduals)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EIGEN_HEADER)?;
    for (k1, k2, res) in rows {
        w.write_record([num(*k1), num(*k2), num(res.res_pi1), num(res.res_pi2), num(res.res_p2)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum<W: Write>(out: W, nodes: &[SpectralNode]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SPECTRUM_HEADER)?;
    for node in nodes {
        w.write_record([num(node.k1), num(node.k2), num(node.amplitude.re), num(node.amplitude.im)])?;
    }
    w.flush()?;
    Ok(())
}
