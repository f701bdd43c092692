use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::fem::{FracOrder, MassMatrix, StiffnessMatrix};
use crate::parabolic::{NormReport, SpaceTimeField};

fn matrix_rows(out: &mut String, n: usize, get: impl Fn(usize, usize) -> f64) {
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{:.16e}", get(i, j))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
}

/// Row-major dump behind `# stiffness n=<n> s=<s> a=<a> b=<b>`.
pub fn stiffness_csv(a: &StiffnessMatrix) -> String {
    let mesh = a.mesh();
    let mut out = format!(
        "# stiffness n={} s={} a={} b={}\n",
        a.dim(),
        a.order().value(),
        mesh.left(),
        mesh.right()
    );
    matrix_rows(&mut out, a.dim(), |i, j| a.get(i, j));
    out
}

pub fn mass_csv(m: &MassMatrix, a: f64, b: f64) -> String {
    let mut out = format!("# mass n={} a={a} b={b}\n", m.dim());
    matrix_rows(&mut out, m.dim(), |i, j| m.get(i, j));
    out
}

/// `t,x,value` rows in time-major order behind
/// `# field T=<T> nt=<nt> n=<n> s=<s>`.
pub fn field_csv(field: &SpaceTimeField, s: FracOrder) -> String {
    let grid = field.grid();
    let mesh = field.mesh();
    let mut out = format!(
        "# field T={} nt={} n={} s={}\nt,x,value\n",
        grid.horizon(),
        grid.steps(),
        mesh.len(),
        s.value()
    );
    for k in 0..field.slots() {
        let t = grid.time(k);
        for (i, v) in field.slot(k).iter().enumerate() {
            let _ = writeln!(out, "{t:.16e},{:.16e},{v:.16e}", mesh.node(i));
        }
    }
    out
}

pub fn norms_csv(report: &NormReport) -> String {
    format!(
        "p,r,linf_q,l2_q,lr_lp\n{},{},{:.16e},{:.16e},{:.16e}\n",
        report.p, report.r, report.linf_q, report.l2_q, report.lr_lp
    )
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}
