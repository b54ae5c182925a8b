//! Subcommand implementations. Each produces a JSON value and a text rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rcft::extensions::{
    boundary_count, classify_c_lt_1, classify_su2_extensions, full_cft_pairs, is_admissible_index,
    jones_index_values, minimal_invariants, su2_invariants, ClassifyMode, ExtensionEntry,
    IndexVerdict, LocalCandidate,
};
use rcft::fusion::{pf_dims, FusionRing, FusionRules, RingJson};
use rcft::invariants::enumerate_invariants;
use rcft::models::{
    central_charge, minimal_data_with_convention, minimal_reduced, su2_data_with, SignConvention,
};
use rcft::modular::{
    check_sl2z, degenerate_sectors, twists_from_t, verlinde, ModularData, ModularJson, Sl2zReport,
    TConvention,
};
use rcft::qseries::{j_series, mckay_check, monster_irrep_dims, monster_order, J_series};
use rcft::{InvariantMatrix, C64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{canonical_json, fmt_c64, fmt_f64, matrix_rows};
use crate::{
    golden, ClassifyCmd, CliError, Command, Config, FileCmd, GoldenCmd, IndexCmd, InvariantsCmd,
    ModelCmd, MoonshineCmd, OutputFormat, VirArgs,
};

/// Highest `m` classified by full enumeration unless `--full` is given.
pub const FULL_MODE_CEILING: u32 = 13;

pub struct Rendered {
    pub value: Value,
    pub text: String,
    pub csv: Option<String>,
    /// `false` when a check reported failure.
    pub ok: bool,
}

impl Rendered {
    fn new<T: Serialize>(value: &T, text: String, ok: bool) -> Self {
        Self {
            value: serde_json::to_value(value).expect("output types serialize"),
            text,
            csv: None,
            ok,
        }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => canonical_json(&self.value),
            OutputFormat::Csv => self.csv.clone().unwrap_or_else(|| self.text.clone()),
            OutputFormat::Table => self.text.clone(),
        }
    }
}

pub fn dispatch(cmd: &Command, cfg: &Config) -> Result<Rendered, CliError> {
    match cmd {
        Command::Model(ModelCmd::Su2 { k }) => model_su2(*k, cfg),
        Command::Model(ModelCmd::Minimal { m, reduced }) => model_minimal(*m, *reduced, cfg),
        Command::Fusion(FileCmd::Check { file }) => fusion_check(file),
        Command::Mtc(FileCmd::Check { file }) => mtc_check(file, cfg),
        Command::Invariants(InvariantsCmd::Su2 { k }) => {
            let (md, inv) = su2_invariants(*k, &cfg.search())?;
            Ok(render_invariants(&md.name, &inv))
        }
        Command::Invariants(InvariantsCmd::Minimal { m }) => {
            let (md, inv) = minimal_invariants(*m, &cfg.search())?;
            Ok(render_invariants(&md.name, &inv))
        }
        Command::Invariants(InvariantsCmd::Hetero { left, right }) => {
            let l = load_modular(left)?;
            let r = load_modular(right)?;
            let inv = enumerate_invariants(&l, &r, &cfg.search())?;
            Ok(render_invariants(&format!("{}|{}", l.name, r.name), &inv))
        }
        Command::Classify(ClassifyCmd::Su2 { k }) => classify_su2(*k, cfg),
        Command::Classify(ClassifyCmd::Vir(args)) => classify_vir(args, cfg),
        Command::Moonshine(MoonshineCmd::J { nmax }) => moonshine_j(*nmax),
        Command::Moonshine(MoonshineCmd::Mckay { n, bound }) => moonshine_mckay(*n, *bound),
        Command::Moonshine(MoonshineCmd::MonsterOrder) => {
            let order = monster_order().to_string();
            let text = format!("|M| = {order} ({} digits)", order.len());
            Ok(Rendered::new(
                &json!({ "order": order, "digits": order.len() }),
                text,
                true,
            ))
        }
        Command::Index(IndexCmd::Jones { n, test }) => index_jones(*n, *test),
        Command::Golden(GoldenCmd::Verify { dir }) => {
            let dir = dir.clone().unwrap_or_else(|| cfg.golden_dir.clone());
            let report = golden::verify(&dir, crate::run_capture)?;
            let mut text = format!(
                "golden: {} file(s) checked in {}",
                report.checked, report.dir
            );
            if let Some(w) = &report.warning {
                let _ = write!(text, "\nwarning: {w}");
            }
            for m in &report.mismatches {
                let _ = write!(text, "\nMISMATCH {}: {}", m.file, m.reason);
            }
            let _ = write!(text, "\n{}", if report.pass { "PASS" } else { "FAIL" });
            Ok(Rendered::new(&report, text, report.pass))
        }
        Command::Golden(GoldenCmd::Record { dir }) => {
            let dir = dir.clone().unwrap_or_else(|| cfg.golden_dir.clone());
            let written = golden::record(&dir, crate::run_capture)?;
            let text = written
                .iter()
                .map(|w| format!("wrote {w}"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Rendered::new(&json!({ "written": written }), text, true))
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Accepts bare modular data or a `model … --json` report with a `data` field.
fn load_modular_json(path: &Path) -> Result<ModularJson, CliError> {
    let v = read_json(path)?;
    let v = match v.get("data") {
        Some(d) if !d.is_null() => d.clone(),
        _ => v,
    };
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_modular(path: &Path) -> Result<ModularData, CliError> {
    let j = load_modular_json(path)?;
    ModularData::from_json(&j).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ModelReport {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    rank: usize,
    labels: Vec<String>,
    d: Vec<f64>,
    omega: Vec<[f64; 2]>,
    w: f64,
    sigma: [f64; 2],
    t_convention: Option<TConvention>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_sign_convention: Option<SignConvention>,
    sl2z: Sl2zReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<ModularJson>,
}

fn model_report<F: FusionRules>(
    md: &ModularData<F>,
    c: Option<String>,
    sign: Option<SignConvention>,
    cfg: &Config,
    data: Option<ModularJson>,
) -> Rendered {
    let sl2z = check_sl2z(md, cfg.tolerance_relation);
    let labels: Vec<String> = (0..md.rank()).map(|l| md.label(l).name.clone()).collect();
    let mut text = format!(
        "{}: rank {}, global dimension w = {}",
        md.name,
        md.rank(),
        fmt_f64(md.w())
    );
    if let Some(c) = &c {
        let _ = write!(text, ", c = {c}");
    }
    let _ = write!(text, "\n{:<14} {:>12}  twist", "sector", "d");
    for (l, name) in labels.iter().enumerate() {
        let _ = write!(
            text,
            "\n{:<14} {:>12}  {}",
            name,
            fmt_f64(md.dims.d[l]),
            fmt_c64(md.omega[l])
        );
    }
    let _ = write!(
        text,
        "\nSL(2,Z): unitarity {:.2e}, S²=C {:.2e}, (ST)³=S² {:.2e} -> {}",
        sl2z.unitarity,
        sl2z.s_squared_is_conjugation,
        sl2z.st_cubed_is_s_squared,
        if sl2z.pass { "PASS" } else { "FAIL" }
    );
    let ok = sl2z.pass;
    let report = ModelReport {
        name: md.name.clone(),
        c,
        rank: md.rank(),
        labels,
        d: md.dims.d.clone(),
        omega: md.omega.iter().map(|z| [z.re, z.im]).collect(),
        w: md.w(),
        sigma: [md.sigma.re, md.sigma.im],
        t_convention: md.convention,
        s_sign_convention: sign,
        sl2z,
        data,
    };
    Rendered::new(&report, text, ok)
}

fn model_su2(k: u32, cfg: &Config) -> Result<Rendered, CliError> {
    let md = su2_data_with(k, &cfg.tolerances())?;
    let data = md.to_json();
    Ok(model_report(&md, None, None, cfg, Some(data)))
}

fn model_minimal(m: u32, reduced: bool, cfg: &Config) -> Result<Rendered, CliError> {
    let c = central_charge(m)?;
    let c = Some(format!("{}/{}", c.numer(), c.denom()));
    if reduced {
        let (md, sign) = minimal_reduced(m)?;
        Ok(model_report(&md, c, Some(sign), cfg, None))
    } else {
        let (md, sign) = minimal_data_with_convention(m, &cfg.tolerances())?;
        let data = md.to_json();
        Ok(model_report(&md, c, Some(sign), cfg, Some(data)))
    }
}

fn fusion_check(file: &Path) -> Result<Rendered, CliError> {
    let ring: RingJson = serde_json::from_value(read_json(file)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    let report = FusionRing::axiom_report(&ring).map_err(|e| CliError::Usage(e.to_string()))?;
    let valid = report.is_valid();
    let mut dims = None;
    if valid {
        let r = FusionRing::from_json(&ring).map_err(|e| CliError::Usage(e.to_string()))?;
        dims = Some(pf_dims(&r));
    }
    let mut text = format!(
        "fusion ring with {} sectors: {}",
        ring.n,
        if valid { "VALID" } else { "INVALID" }
    );
    for v in report.violations() {
        let _ = write!(text, "\n  {v}");
    }
    if let Some(d) = &dims {
        let _ = write!(
            text,
            "\n  Perron-Frobenius dimensions: {}",
            d.d.iter()
                .map(|x| fmt_f64(*x))
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    let value = json!({ "valid": valid, "axioms": report, "dims": dims.as_ref().map(|d| &d.d), "w": dims.as_ref().map(|d| d.w) });
    Ok(Rendered::new(&value, text, valid))
}

#[derive(Serialize)]
struct MtcReport {
    name: String,
    sl2z: Sl2zReport,
    verlinde_pass: bool,
    verlinde_residual: Option<f64>,
    verlinde_detail: Option<String>,
    dims_residual: f64,
    twist_residual: f64,
    non_degenerate: bool,
    degeneracy_detail: Option<String>,
    pass: bool,
}

fn mtc_check(file: &Path, cfg: &Config) -> Result<Rendered, CliError> {
    let md = load_modular(file)?;
    let tol = cfg.tolerance_relation;
    let sl2z = check_sl2z(&md, tol);
    let (verlinde_pass, verlinde_residual, verlinde_detail) =
        match verlinde(&md.s, cfg.tolerance_rounding) {
            Ok(v) if v.coeffs == md.ring.flat() => (true, Some(v.residual), None),
            Ok(v) => (
                false,
                Some(v.residual),
                Some("Verlinde tensor differs from the fusion rules".to_string()),
            ),
            Err(e) => (false, None, Some(e.to_string())),
        };
    let s00 = md.s[(0, 0)];
    let dims_residual = (0..md.rank())
        .map(|l| (md.s[(0, l)] / s00 - C64::new(md.dims.d[l], 0.0)).norm())
        .fold(0.0, f64::max);
    let twist_residual = match twists_from_t(&md.t) {
        Ok((omega, _)) => omega
            .iter()
            .zip(&md.omega)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    let (non_degenerate, degeneracy_detail) = match degenerate_sectors(&md, tol) {
        Ok(v) => (
            v == [0],
            (v != [0]).then(|| format!("degenerate sectors {v:?}")),
        ),
        Err(e) => (false, Some(e.to_string())),
    };
    let pass =
        sl2z.pass && verlinde_pass && dims_residual < tol && twist_residual < tol && non_degenerate;
    let mut text = format!("{}: rank {}", md.name, md.rank());
    let line = |name: &str, r: f64| {
        format!(
            "\n  {name:<22} {r:.3e} {}",
            if r < tol { "ok" } else { "FAIL" }
        )
    };
    text += &line("unitarity", sl2z.unitarity);
    text += &line("symmetry", sl2z.symmetry);
    text += &line("S^2 = C", sl2z.s_squared_is_conjugation);
    text += &line("(ST)^3 = S^2", sl2z.st_cubed_is_s_squared);
    text += &line("d = S0l/S00", dims_residual);
    text += &line("twists vs T", twist_residual);
    let _ = write!(
        text,
        "\n  {:<22} {}",
        "Verlinde",
        if verlinde_pass { "ok" } else { "FAIL" }
    );
    let _ = write!(
        text,
        "\n  {:<22} {}",
        "non-degenerate",
        if non_degenerate { "ok" } else { "FAIL" }
    );
    let _ = write!(text, "\n{}", if pass { "PASS" } else { "FAIL" });
    let report = MtcReport {
        name: md.name.clone(),
        sl2z,
        verlinde_pass,
        verlinde_residual,
        verlinde_detail,
        dims_residual,
        twist_residual,
        non_degenerate,
        degeneracy_detail,
        pass,
    };
    Ok(Rendered::new(&report, text, pass))
}

fn render_invariants(model: &str, inv: &[InvariantMatrix]) -> Rendered {
    let mut text = format!("{model}: {} modular invariant(s)", inv.len());
    let mut csv = String::from("index,label,row,entries\n");
    for (i, z) in inv.iter().enumerate() {
        let label = z
            .label
            .as_ref()
            .map_or("-".to_string(), ToString::to_string);
        let _ = write!(
            text,
            "\n\n[{i}] {label} ({:?}), residuals S {:.2e} T {:.2e}\n{}",
            z.type_flag,
            z.residuals.s,
            z.residuals.t,
            matrix_rows(&z.z)
        );
        for (r, row) in z.z.iter().enumerate() {
            let _ = writeln!(
                csv,
                "{i},{label},{r},{}",
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
    }
    let value = json!({ "model": model, "count": inv.len(), "invariants": inv });
    Rendered::new(&value, text, true).with_csv(csv)
}

fn entries_text(entries: &[ExtensionEntry], candidates: &[LocalCandidate]) -> String {
    let mut text = String::new();
    for e in entries {
        let label = e
            .label
            .as_ref()
            .map_or("-".to_string(), ToString::to_string);
        let theta = e
            .theta
            .sectors
            .iter()
            .map(|s| {
                if s.multiplicity == 1 {
                    s.label.clone()
                } else {
                    format!("{}{}", s.multiplicity, s.label)
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ");
        let r = &e.report;
        let _ = write!(
            text,
            "\n  {label:<10} θ = {theta:<40} vacuum_once={} self_conjugate={} trivial_twists={} closure={} -> {}",
            r.vacuum_once,
            r.self_conjugate,
            r.trivial_twists,
            r.fusion_closure_consistency,
            if r.pass { "candidate" } else { "rejected" }
        );
    }
    let _ = write!(text, "\nlocal extension candidates:");
    for c in candidates {
        let theta = c
            .theta
            .sectors
            .iter()
            .map(|s| s.label.clone())
            .collect::<Vec<_>>()
            .join(" ⊕ ");
        let from = c
            .from
            .iter()
            .map(|l| l.as_ref().map_or("-".to_string(), ToString::to_string))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = write!(
            text,
            "\n  θ = {theta}  (d_θ = {}; from {from})",
            fmt_f64(c.theta.d_theta)
        );
    }
    text
}

fn classify_su2(k: u32, cfg: &Config) -> Result<Rendered, CliError> {
    let cl = classify_su2_extensions(k, &cfg.search())?;
    let text = format!(
        "SU(2)_{k}: {} invariant(s){}",
        cl.invariants.len(),
        entries_text(&cl.entries, &cl.local_candidates)
    );
    Ok(Rendered::new(&cl, text, true))
}

fn classify_vir(args: &VirArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let m = args.m;
    if args.boundary || args.full_cft {
        let mut value = serde_json::Map::new();
        let mut text = String::new();
        let mut ok = true;
        if args.full_cft {
            let r = full_cft_pairs(m, &cfg.search())?;
            let pairs = r
                .pairs
                .iter()
                .map(|(a, b)| format!("({a},{b})"))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = write!(
                text,
                "m={m} full CFT pairs: {pairs}; within ADE pair family: {}",
                r.within_family
            );
            ok &= r.within_family;
            value.insert(
                "full_cft".into(),
                serde_json::to_value(&r).expect("serializes"),
            );
        }
        if args.boundary {
            let r = boundary_count(m)?;
            if !text.is_empty() {
                text.push('\n');
            }
            let _ = write!(text, "m={m} boundary count {}", r.count);
            for t in &r.terms {
                let _ = write!(
                    text,
                    "\n  {} ({} orbits) x {} ({} orbits)",
                    t.g1, t.orbits1, t.g2, t.orbits2
                );
            }
            value.insert(
                "boundary".into(),
                serde_json::to_value(&r).expect("serializes"),
            );
        }
        return Ok(Rendered {
            value: Value::Object(value),
            text,
            csv: None,
            ok,
        });
    }
    let mode = if args.reduced || (m > FULL_MODE_CEILING && !args.full) {
        ClassifyMode::Reduced
    } else {
        ClassifyMode::Full
    };
    let cl = classify_c_lt_1(m, mode, &cfg.search())?;
    let text = format!(
        "m={m}, c={}, mode {:?}, exceptional central charge: {}{}",
        cl.c,
        cl.mode,
        cl.exceptional,
        entries_text(&cl.entries, &cl.local_candidates)
    );
    Ok(Rendered::new(&cl, text, true))
}

fn moonshine_j(nmax: i64) -> Result<Rendered, CliError> {
    if nmax < -1 {
        return Err(CliError::Usage("--nmax must be at least -1".into()));
    }
    let j = j_series(nmax).map_err(|e| CliError::Usage(e.to_string()))?;
    let big_j = J_series(nmax).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rows = Vec::new();
    let mut text = format!("{:>4}  {:>40}  {:>40}", "n", "c_j(n)", "c_J(n)");
    let mut csv = String::from("n,j,J\n");
    for e in -1..=nmax {
        let a = j.coeff(e).expect("within precision").to_string();
        let b = big_j.coeff(e).expect("within precision").to_string();
        let _ = write!(text, "\n{e:>4}  {a:>40}  {b:>40}");
        let _ = writeln!(csv, "{e},{a},{b}");
        rows.push(json!({ "n": e, "j": a, "J": b }));
    }
    Ok(Rendered::new(&json!({ "n_max": nmax, "coefficients": rows }), text, true).with_csv(csv))
}

fn moonshine_mckay(n: i64, bound: u32) -> Result<Rendered, CliError> {
    if n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let big_j = J_series(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let coeff = big_j.coeff(n).expect("within precision");
    let dims = monster_irrep_dims();
    let report = mckay_check(&coeff, &dims, bound).map_err(|e| CliError::Usage(e.to_string()))?;
    let decomps: Vec<Vec<Value>> = report
        .decompositions
        .iter()
        .map(|d| {
            d.iter()
                .map(|(dim, mult)| json!({ "dim": dim.to_string(), "mult": mult }))
                .collect()
        })
        .collect();
    let mut text = format!(
        "c_J({n}) = {coeff}: {} decomposition(s) with multiplicities ≤ {bound}",
        decomps.len()
    );
    for d in &report.decompositions {
        let terms = d
            .iter()
            .map(|(dim, mult)| format!("{mult}·{dim}"))
            .collect::<Vec<_>>()
            .join(" + ");
        let _ = write!(text, "\n  {coeff} = {terms}");
    }
    let value = json!({
        "n": n,
        "coeff": coeff.to_string(),
        "bound": bound,
        "irrep_dims": dims.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "decompositions": decomps,
        "found": report.found(),
    });
    Ok(Rendered::new(&value, text, report.found()))
}

fn index_jones(n: Option<u32>, test: Option<f64>) -> Result<Rendered, CliError> {
    if let Some(x) = test {
        let verdict = is_admissible_index(x);
        let ok = verdict != IndexVerdict::Rejected;
        let text = match verdict {
            IndexVerdict::Discrete { n } => format!("{x} = 4cos²(π/{n}): admissible"),
            IndexVerdict::Continuum => format!("{x} ≥ 4: admissible"),
            IndexVerdict::Rejected => format!("{x}: not an admissible index"),
        };
        return Ok(Rendered::new(
            &json!({ "x": x, "result": verdict, "admissible": ok }),
            text,
            ok,
        ));
    }
    let n_max = n.expect("clap enforces one of --n / --test");
    let values = jones_index_values(n_max).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut text = String::new();
    let mut csv = String::from("n,value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = write!(
            text,
            "{}{:>5}  {v:.15}",
            if i == 0 { "" } else { "\n" },
            i + 3
        );
        let _ = writeln!(csv, "{},{v:.16e}", i + 3);
    }
    let rows: Vec<Value> = values
        .iter()
        .enumerate()
        .map(|(i, v)| json!({ "n": i + 3, "value": v }))
        .collect();
    Ok(Rendered::new(
        &json!({ "n_max": n_max, "values": rows, "limit": 4.0 }),
        text,
        true,
    )
    .with_csv(csv))
}
