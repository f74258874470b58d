//! CSV solver telemetry with the effective configuration echoed on top.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use meshtv_core::solver::IterationReport;

use crate::error::{io_err, Result};

/// Writes `# key = value` provenance lines, a header, and one row per outer
/// iteration: `outer,lagrangian,tv,max_residual,min_area`.
pub fn write_telemetry(
    path: &Path,
    effective_config: &[(String, String)],
    reports: &[IterationReport],
) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut writer = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        for (key, value) in effective_config {
            writeln!(writer, "# {key} = {value}")?;
        }
        writeln!(writer, "outer,lagrangian,tv,max_residual,min_area")?;
        for r in reports {
            writeln!(
                writer,
                "{},{},{},{},{}",
                r.outer_index, r.lagrangian, r.tv, r.max_residual, r.min_area
            )?;
        }
        writer.flush()
    };
    write().map_err(|e| io_err(path, e))
}
