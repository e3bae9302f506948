//! Table and JSON writers. Floats use Rust's shortest round-trip form, so
//! identical values always print identically.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use firewatch_core::planning::{CompareRow, EcdfRow};
use firewatch_core::AnalyticLaw;
use serde::Serialize;
use serde_json::json;

use crate::CliError;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ValueRow {
    pub x: f64,
    pub cdf: f64,
    pub survival: f64,
}

/// A file path, or stdout when absent.
pub struct Sink<'a> {
    path: Option<&'a Path>,
}

impl<'a> Sink<'a> {
    pub fn new(path: Option<&'a Path>) -> Self {
        Sink { path }
    }

    pub fn write_with(
        &self,
        f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
    ) -> Result<(), CliError> {
        let result = match self.path {
            Some(p) => File::create(p).and_then(|file| {
                let mut w = BufWriter::new(file);
                f(&mut w)?;
                w.flush()
            }),
            None => {
                let stdout = io::stdout();
                let mut w = BufWriter::new(stdout.lock());
                f(&mut w).and_then(|_| w.flush())
            }
        };
        result.map_err(|e| CliError::Output(format!("write failed: {e}")))
    }

    pub fn write_json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        self.write_with(|w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)
        })
    }

    pub fn write_values_csv(&self, rows: &[ValueRow]) -> Result<(), CliError> {
        self.write_with(|w| {
            writeln!(w, "x,cdf,survival")?;
            for r in rows {
                writeln!(w, "{},{},{}", r.x, r.cdf, r.survival)?;
            }
            Ok(())
        })
    }
}

pub fn law_json(law: &AnalyticLaw, rows: &[ValueRow]) -> serde_json::Value {
    json!({
        "law": law.name(),
        "mean": law.mean,
        "second_moment": law.second_moment,
        "variance": law.variance,
        "support_upper": law.support_upper,
        "points": rows,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_compare_rows_csv(rows: &[CompareRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(
        w,
        "sensors,distance,trials,mean_td,se_td,var_td,mean_ad,se_ad,var_ad,se_var_td,se_var_ad,\
         theory_mean_td,theory_var_td,theory_mean_ad,theory_var_ad,exact_mean_ad,exact_var_ad,ks_td,ks_ad"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.sensors,
            r.distance,
            r.trials,
            r.mean_td,
            r.se_td,
            r.var_td,
            r.mean_ad,
            r.se_ad,
            r.var_ad,
            r.se_var_td,
            r.se_var_ad,
            opt(r.theory_mean_td),
            opt(r.theory_var_td),
            opt(r.theory_mean_ad),
            opt(r.theory_var_ad),
            opt(r.exact_mean_ad),
            opt(r.exact_var_ad),
            opt(r.ks_td),
            opt(r.ks_ad),
        )?;
    }
    Ok(())
}

pub fn write_ecdf_csv(rows: &[EcdfRow], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "sensors,variable,x,empirical,exact,asymptotic")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.sensors,
            r.variable,
            r.x,
            r.empirical,
            opt(r.exact),
            opt(r.asymptotic)
        )?;
    }
    Ok(())
}
