use crate::{IMIN_ENV, SCHEMA};
use curvekit::geodesics::{
    self, imin::IminError, reduce_intersections, DistanceKind, GeodesicError, IminTable,
    ReduceOptions,
};
use curvekit::ladder::{canonical_form, Ladder, LadderError};
use curvekit::surface::{complex_json, SurfaceComplex, SurfaceError};
use curvekit::surgery::{
    find_bands, find_spirals, spiral_addition, spiral_surgery, spiral_winding, AdditionSite,
    SurgeryError,
};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_INVALID: u8 = 1;
pub const EXIT_AT_LEAST: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("IO: cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Ladder(#[from] LadderError),
    #[error("{0}")]
    Surface(#[from] SurfaceError),
    #[error("{0}")]
    Surgery(#[from] SurgeryError),
    #[error("{0}")]
    Table(#[from] IminError),
    #[error("{0}")]
    Geodesic(GeodesicError),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IO",
            CliError::Ladder(e) => e.code(),
            CliError::Surface(e) => e.code(),
            CliError::Surgery(e) => e.code(),
            CliError::Table(_) => "IMIN_TABLE",
            CliError::Geodesic(e) => e.code(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Surgery(_) => EXIT_PRECONDITION,
            CliError::Geodesic(GeodesicError::Unsupported(_)) => EXIT_PRECONDITION,
            _ => EXIT_INVALID,
        }
    }

    pub fn outcome(&self) -> Outcome {
        Outcome {
            json: json!({
                "schema": SCHEMA,
                "error": {"code": self.code(), "message": self.to_string()},
            }),
            summary: format!("error: {self}"),
            code: self.exit_code(),
        }
    }
}

/// One report: a JSON line for stdout, prose for stderr and the exit code.
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub code: u8,
}

fn report(command: &str, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    if let Value::Object(fields) = body {
        m.extend(fields);
    }
    Value::Object(m)
}

fn read_ladder(path: &Path) -> Result<Ladder, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Ladder::parse(&text)?)
}

fn ladder_json(l: &Ladder) -> Value {
    json!({"top": l.top(), "bottom": l.bottom()})
}

/// `[F_4, F_6, ...]` without trailing zeros beyond `F_6`.
fn trimmed(vector: &[usize]) -> Vec<usize> {
    let keep = vector
        .iter()
        .rposition(|&x| x > 0)
        .map_or(0, |p| p + 1)
        .max(2);
    vector[..keep.min(vector.len())].to_vec()
}

fn distance_json(result: &Result<DistanceKind, GeodesicError>) -> Value {
    match result {
        Ok(kind) => json!(kind),
        Err(GeodesicError::Unsupported(reason)) => json!({"kind": "UNSUPPORTED", "reason": reason}),
        Err(e) => json!({"kind": "ERROR", "reason": e.to_string()}),
    }
}

fn distance_exit(result: &Result<DistanceKind, GeodesicError>) -> u8 {
    match result {
        Ok(DistanceKind::AtLeast { .. }) => EXIT_AT_LEAST,
        _ => 0,
    }
}

fn distance_text(result: &Result<DistanceKind, GeodesicError>) -> String {
    match result {
        Ok(kind) => kind.to_string(),
        Err(e) => e.to_string(),
    }
}

fn spiral_list(complex: &SurfaceComplex) -> Vec<Value> {
    let l = complex.ladder();
    find_spirals(complex)
        .iter()
        .map(|s| {
            json!({
                "band": s.band_index,
                "width": s.band.width,
                "length": s.band.length,
                "w_arcs": s.band.w_arcs,
                "interior_w_arcs": s.interior_w_arcs(complex),
                "multiplicity": s.multiplicity,
                "winding": spiral_winding(l, s),
            })
        })
        .collect()
}

pub fn analyze(path: &Path, max_d: usize) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    let complex = SurfaceComplex::new(&l)?;
    let dec = complex.decomposition();
    let canon = canonical_form(&l);
    let bands = find_bands(&complex);
    let spirals = spiral_list(&complex);
    let result = geodesics::distance(&l, max_d).map(|r| r.kind);
    let distance_bound_ok = match result {
        Ok(DistanceKind::Exact { d }) => Some(geodesics::within_distance_bound(d, l.n())),
        _ => None,
    };
    let summary = format!(
        "{}: genus {}, i = {}, decomposition {:?}, distance {}, {} spiral(s)",
        path.display(),
        complex.genus(),
        l.n(),
        trimmed(&dec.vector()),
        distance_text(&result),
        spirals.len()
    );
    let json = report(
        "analyze",
        json!({
            "ladder": ladder_json(&l),
            "genus": complex.genus(),
            "i": l.n(),
            "decomposition": trimmed(&dec.vector()),
            "large_vector": dec.large_vector(),
            "distance_bound": dec.distance_bound(),
            "distance_bound_ok": distance_bound_ok,
            "distance": distance_json(&result),
            "canonical": ladder_json(&canon.canonical_ladder),
            "complex": complex_json(&complex),
            "bands": bands.len(),
            "spirals": spirals,
        }),
    );
    Ok(Outcome {
        json,
        summary,
        code: distance_exit(&result),
    })
}

pub fn distance(path: &Path, max_d: usize) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    SurfaceComplex::new(&l)?;
    let full = geodesics::distance(&l, max_d);
    let witness = full
        .as_ref()
        .ok()
        .and_then(|r| r.witness.as_ref())
        .map(|w| json!({"length": w.length(), "first_counts": w.first.counts()}));
    let result = full.map(|r| r.kind);
    let json = report(
        "distance",
        json!({
            "i": l.n(),
            "max_d": max_d,
            "distance": distance_json(&result),
            "witness": witness,
        }),
    );
    Ok(Outcome {
        json,
        summary: format!("{}: distance {}", path.display(), distance_text(&result)),
        code: distance_exit(&result),
    })
}

pub fn spirals(path: &Path) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    let complex = SurfaceComplex::new(&l)?;
    let spirals = spiral_list(&complex);
    let summary = format!(
        "{}: {} spiral(s) among {} band(s)",
        path.display(),
        spirals.len(),
        find_bands(&complex).len()
    );
    Ok(Outcome {
        json: report("spirals", json!({"i": l.n(), "spirals": spirals})),
        summary,
        code: 0,
    })
}

pub fn surgery(path: &Path, band: usize, edge: usize) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    let complex = SurfaceComplex::new(&l)?;
    let spiral = find_spirals(&complex)
        .into_iter()
        .find(|s| s.band_index == band)
        .ok_or_else(|| SurgeryError::Precondition {
            reason: format!("band {band} is not a spiral"),
        })?;
    let (out, trace) = spiral_surgery(&l, &spiral, edge)?;
    let summary = format!(
        "{}: spiral surgery along w-arc {edge} of band {band}: i {} -> {}",
        path.display(),
        trace.i_before,
        trace.i_after
    );
    Ok(Outcome {
        json: report(
            "surgery",
            json!({"trace": trace, "result": ladder_json(&out)}),
        ),
        summary,
        code: 0,
    })
}

pub fn add(
    path: &Path,
    bicorn: Option<(usize, usize)>,
    band: Option<usize>,
    m: usize,
) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    SurfaceComplex::new(&l)?;
    let site = match (bicorn, band) {
        (Some((v_arc, w_arc)), _) => AdditionSite::Bicorn { v_arc, w_arc },
        (None, Some(index)) => AdditionSite::Band { index },
        (None, None) => {
            return Err(SurgeryError::InvalidSite {
                reason: "give --bicorn or --band".into(),
            }
            .into())
        }
    };
    let out = spiral_addition(&l, site, m)?;
    let after = SurfaceComplex::new(&out)?;
    let summary = format!(
        "{}: spiral addition with m = {m}: i {} -> {}",
        path.display(),
        l.n(),
        out.n()
    );
    Ok(Outcome {
        json: report(
            "add",
            json!({
                "site": site,
                "m": m,
                "i_before": l.n(),
                "i_after": out.n(),
                "decomposition": trimmed(&after.decomposition().vector()),
                "result": ladder_json(&out),
            }),
        ),
        summary,
        code: 0,
    })
}

fn imin_table(path: Option<&Path>) -> Result<(IminTable, Option<String>), CliError> {
    let mut table = IminTable::builtin();
    let source = path
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(IMIN_ENV).map(PathBuf::from));
    if let Some(p) = &source {
        table.merge(IminTable::load(p)?);
    }
    Ok((table, source.map(|p| p.display().to_string())))
}

pub fn reduce(path: &Path, table_path: Option<&Path>, max_d: usize) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    SurfaceComplex::new(&l)?;
    let (table, source) = imin_table(table_path)?;
    let opts = ReduceOptions {
        max_d,
        ..ReduceOptions::default()
    };
    let trace = reduce_intersections(&l, &table, opts).map_err(CliError::Geodesic)?;
    let accepted = trace.accepted().count();
    let summary = format!(
        "{}: {} step(s), {} accepted, i {} -> {}, distance {}",
        path.display(),
        trace.steps.len(),
        accepted,
        l.n(),
        trace.result.n(),
        trace.distance
    );
    Ok(Outcome {
        json: report(
            "reduce",
            json!({
                "imin_table": source,
                "i_before": l.n(),
                "i_after": trace.result.n(),
                "accepted": accepted,
                "explained": trace.is_explained(),
                "trace": trace,
            }),
        ),
        summary,
        code: 0,
    })
}

pub fn canonical(path: &Path) -> Result<Outcome, CliError> {
    let l = read_ladder(path)?;
    let c = canonical_form(&l);
    Ok(Outcome {
        json: report(
            "canonical",
            json!({
                "ladder": ladder_json(&l),
                "canonical": ladder_json(&c.canonical_ladder),
                "applied_rotation_v": c.applied_rotation_v,
                "applied_rotation_w": c.applied_rotation_w,
                "text": c.canonical_ladder.serialize(),
            }),
        ),
        summary: format!(
            "{}: canonical ladder\n{}",
            path.display(),
            c.canonical_ladder.serialize().trim_end()
        ),
        code: 0,
    })
}

/// The `*.ladder` files of a directory in name order.
pub fn ladder_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let p = entry.map_err(io)?.path();
        if p.is_file() && p.extension().is_some_and(|e| e == "ladder") {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}

pub fn batch(dir: &Path) -> Result<Vec<Outcome>, CliError> {
    Ok(ladder_files(dir)?
        .iter()
        .map(|p| analyze(p, geodesics::MAX_SUPPORTED_DISTANCE).unwrap_or_else(|e| e.outcome()))
        .collect())
}
