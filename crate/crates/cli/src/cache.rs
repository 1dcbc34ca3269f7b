//! Structure-constant tables on disk: the CSV itself plus a sidecar
//! `<out>.manifest.json` naming what it holds.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use classalg::table::structure_table;
use classalg::Config;

use crate::Cli;

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Manifest {
    family: String,
    n_max: usize,
    version: String,
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn read_manifest(path: &Path) -> Option<Manifest> {
    serde_json::from_str(&fs::read_to_string(path).ok()?).ok()
}

fn render_csv(cli: &Cli, n_max: usize, config: &Config) -> anyhow::Result<Vec<u8>> {
    let family = cli.family()?;
    let rows = structure_table(&family, n_max, config)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "g", "h", "r", "coeff"])?;
    for row in &rows {
        w.write_record([&row.family, row.g.key(), row.h.key(), row.r.key(), &row.coeff.to_string()])?;
    }
    Ok(w.into_inner()?)
}

/// Writes the table to `--out` (or stdout). An existing file is reused when
/// its manifest matches; otherwise it is only replaced under `--force`.
pub(crate) fn table(cli: &Cli, n_max: usize, config: &Config) -> anyhow::Result<()> {
    let Some(out) = &cli.out else {
        let bytes = render_csv(cli, n_max, config)?;
        std::io::Write::write_all(&mut std::io::stdout().lock(), &bytes)?;
        return Ok(());
    };
    let expected = Manifest {
        family: cli.family()?.to_string(),
        n_max,
        version: env!("CARGO_PKG_VERSION").to_owned(),
    };
    let sidecar = manifest_path(out);
    if out.exists() && !cli.force {
        if read_manifest(&sidecar).as_ref() == Some(&expected) {
            eprintln!("reusing {}", out.display());
            return Ok(());
        }
        bail!("{} exists and does not match this table; pass --force to overwrite", out.display());
    }
    let bytes = render_csv(cli, n_max, config)?;
    fs::write(out, bytes).with_context(|| format!("writing {}", out.display()))?;
    let manifest = serde_json::to_string_pretty(&expected)? + "\n";
    fs::write(&sidecar, manifest).with_context(|| format!("writing {}", sidecar.display()))?;
    Ok(())
}
