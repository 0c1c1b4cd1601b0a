use std::io::Write;

use super::Trajectory;
use crate::csvfmt::f;
use crate::error::Result;

/// One row per recorded instant: t, trace, purity, ⟨x⟩, ⟨p⟩ and the
/// mirror-line coherence peak.
pub fn write_summary_csv<W: Write>(traj: &Trajectory, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "trace", "purity", "x", "p", "offDiagonalPeak"])?;
    for r in &traj.summary {
        out.write_record([f(r.t), f(r.trace), f(r.purity), f(r.x), f(r.p), f(r.off_diagonal_peak)])?;
    }
    out.flush()?;
    Ok(())
}

/// One row per snapshot: t followed by |ρ(xᵢ, xⱼ)| in row-major order.
pub fn write_snapshot_csv<W: Write>(traj: &Trajectory, w: W) -> Result<()> {
    let n = traj.grid.n_points;
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["t".to_string()];
    for i in 0..n {
        for j in 0..n {
            header.push(format!("abs_{i}_{j}"));
        }
    }
    out.write_record(&header)?;
    for s in &traj.snapshots {
        let v = s.rho.values();
        let mut row = Vec::with_capacity(n * n + 1);
        row.push(f(s.t));
        for i in 0..n {
            for j in 0..n {
                row.push(f(v[(i, j)].norm()));
            }
        }
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}
