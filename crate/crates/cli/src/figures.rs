use std::fmt::Write as _;
use std::fs;

use serde_json::{json, Value};

use qhide::bounds::{multi_bit_contours, theorem1_curve, unit_grid, werner_feasible_region, tau_ppt_region};
use qhide::locc::pairwise_attack_exact;

use crate::{Failure, FiguresArgs};

/// One CSV dataset: `#` header lines, a column row, then data rows.
struct Csv {
    name: &'static str,
    text: String,
    rows: usize,
}

impl Csv {
    fn new(name: &'static str, columns: &[&str], params: &str, relation: &str) -> Csv {
        let mut text = String::new();
        writeln!(text, "# figure: {name}").unwrap();
        writeln!(text, "# columns: {}", columns.join(",")).unwrap();
        writeln!(text, "# params: {params}").unwrap();
        writeln!(text, "# relation: {relation}").unwrap();
        writeln!(text, "{}", columns.join(",")).unwrap();
        Csv { name, text, rows: 0 }
    }

    fn row(&mut self, fields: &[String]) {
        writeln!(self.text, "{}", fields.join(",")).unwrap();
        self.rows += 1;
    }
}

fn f(x: f64) -> String {
    format!("{x:.12}")
}

fn fig2(grid: usize) -> Result<Csv, Failure> {
    let mut csv = Csv::new(
        "fig2",
        &["n", "kind", "p00", "p11"],
        &format!("n = 1..4; grid = {grid}"),
        "region: largest p11 at each p00 over PPT measurements on the hiding states; attack: pairwise Bell measurement",
    );
    for n in 1..=4 {
        for p in werner_feasible_region(n, &unit_grid(grid))? {
            csv.row(&[n.to_string(), "region".into(), f(p.p00), f(p.p11)]);
        }
        let a = pairwise_attack_exact(n)?;
        csv.row(&[n.to_string(), "attack".into(), f(a.p00), f(a.p11)]);
    }
    Ok(csv)
}

fn boundcurve(grid: usize) -> Result<Csv, Failure> {
    let mut csv = Csv::new(
        "boundcurve",
        &["n", "x", "advantage", "floor"],
        &format!("n = 1..2; x = p00 - p11 on {grid} points in [-1, 1]"),
        "advantage = sqrt(1 + x^2) / sqrt(16^n - 1) is guaranteed for p00 + p11 - 1; floor is its value at x = 0",
    );
    for n in 1..=2 {
        let floor = theorem1_curve(n, 0.0)?;
        for t in unit_grid(grid) {
            let x = 2.0 * t - 1.0;
            csv.row(&[n.to_string(), f(x), f(theorem1_curve(n, x)?), f(floor)]);
        }
    }
    Ok(csv)
}

fn mbound() -> Result<Csv, Failure> {
    let mut csv = Csv::new(
        "mbound",
        &["n", "k", "log2_info_bound"],
        "n = 1..40; k = 1..8",
        "log2 of the upper bound on the mutual information about k hidden bits, each hidden in n pairs",
    );
    let ns: Vec<usize> = (1..=40).collect();
    let ks: Vec<usize> = (1..=8).collect();
    for p in multi_bit_contours(&ns, &ks)? {
        csv.row(&[p.n.to_string(), p.k.to_string(), f(p.log2_info_bound)]);
    }
    Ok(csv)
}

fn tau_region(name: &'static str, n: usize, grid: usize) -> Result<Csv, Failure> {
    let mut csv = Csv::new(
        name,
        &["n", "p00", "p11_upper", "p11_feasible"],
        &format!("n = {n}; grid = {grid}"),
        "largest p11 at each p00 over PPT measurements on the tau parity states; p11_upper bounds the optimum, p11_feasible is attained",
    );
    for p in tau_ppt_region(n, &unit_grid(grid))? {
        csv.row(&[n.to_string(), f(p.p00), f(p.p11), f(p.p11_feasible)]);
    }
    Ok(csv)
}

pub fn write_all(a: &FiguresArgs, _seed: u64) -> Result<Value, Failure> {
    if a.grid < 2 || a.tau_grid < 2 {
        return Err(Failure::Usage("grids need at least 2 points".into()));
    }
    if !(2..=3).contains(&a.tau_max_n) {
        return Err(Failure::Usage("--tau-max-n must be 2 or 3".into()));
    }
    fs::create_dir_all(&a.out)?;
    let mut sets = vec![fig2(a.grid)?, boundcurve(a.grid)?, mbound()?, tau_region("talppt", 1, a.grid)?];
    let mut tal2 = tau_region("tal2bdd", 2, a.tau_grid)?;
    if a.tau_max_n == 3 {
        let extra = tau_region("tal2bdd", 3, a.tau_grid)?;
        // Same columns; keep only the data rows.
        for line in extra.text.lines().skip(5) {
            tal2.text.push_str(line);
            tal2.text.push('\n');
            tal2.rows += 1;
        }
    }
    sets.push(tal2);
    let mut files = serde_json::Map::new();
    for csv in &sets {
        let path = a.out.join(format!("{}.csv", csv.name));
        fs::write(&path, &csv.text)?;
        files.insert(csv.name.into(), json!({ "path": path.display().to_string(), "rows": csv.rows }));
    }
    Ok(Value::Object(files))
}
