//! Binary field snapshots and 1-D slice export.
//!
//! A dump is one ASCII header line of `key=value` tokens, starting with the
//! magic word `LCDMHD-DUMP`, followed by `nx * ny` records of eleven
//! little-endian `f64` values `(rho, u, v, w, p, b1, b2, b3, E, A, B)`,
//! row-major with `j` fastest.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::MhdError;
use crate::solver::field::{pack, SLOT_A, SLOT_B};
use crate::solver::{AugField, Grid2D};
use crate::state::{idx, prim_to_cons, AugPair, GasModel, PrimState};

pub const MAGIC: &str = "LCDMHD-DUMP";
pub const FORMAT_VERSION: u32 = 1;
pub const RECORD_LEN: usize = 11;
pub const VARIABLES: [&str; RECORD_LEN] = ["rho", "u", "v", "w", "p", "b1", "b2", "b3", "E", "A", "B"];

#[derive(Clone, Debug, PartialEq)]
pub struct DumpHeader {
    pub version: u32,
    pub nx: usize,
    pub ny: usize,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub time: f64,
    pub gamma: f64,
    pub variant: String,
    pub problem: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldDump {
    pub header: DumpHeader,
    pub records: Vec<[f64; RECORD_LEN]>,
}

impl FieldDump {
    pub fn from_field(
        field: &AugField,
        gas: &GasModel,
        time: f64,
        variant: &str,
        problem: &str,
    ) -> Result<Self, MhdError> {
        let g = field.grid;
        let mut records = Vec::with_capacity(g.num_cells());
        for k in 0..g.ny {
            for j in 0..g.nx {
                let v = field.prim(j, k, gas).map_err(|e| e.at(j as isize, k as isize, "dump"))?;
                let c = &field.cells[field.index(j, k)];
                let mut r = [0.0; RECORD_LEN];
                r[..8].copy_from_slice(&v.0);
                r[8] = c[idx::EN];
                r[9] = c[SLOT_A];
                r[10] = c[SLOT_B];
                records.push(r);
            }
        }
        Ok(Self {
            header: DumpHeader {
                version: FORMAT_VERSION,
                nx: g.nx,
                ny: g.ny,
                x_range: (g.x_min, g.x_max),
                y_range: (g.y_min, g.y_max),
                time,
                gamma: gas.gamma(),
                variant: variant.to_string(),
                problem: problem.to_string(),
            },
            records,
        })
    }

    pub fn grid(&self) -> Result<Grid2D, MhdError> {
        let h = &self.header;
        Grid2D::new(h.nx, h.ny, h.x_range, h.y_range)
    }

    /// Rebuilds cell averages from the primitive records. Momenta and energy
    /// are recomputed, so they agree with the dumped field to round-off.
    pub fn to_field(&self) -> Result<AugField, MhdError> {
        let grid = self.grid()?;
        let gas = GasModel::new(self.header.gamma)?;
        let mut cells = Vec::with_capacity(self.records.len());
        for r in &self.records {
            let mut v = [0.0; 8];
            v.copy_from_slice(&r[..8]);
            let u = prim_to_cons(&PrimState(v), &gas)?;
            cells.push(pack(&u, AugPair { a: r[9], b: r[10] }));
        }
        Ok(AugField { grid, cells })
    }

    /// Column of one variable by name.
    pub fn variable(&self, name: &str) -> Result<Vec<f64>, MhdError> {
        let i = variable_index(name)?;
        Ok(self.records.iter().map(|r| r[i]).collect())
    }
}

pub fn variable_index(name: &str) -> Result<usize, MhdError> {
    VARIABLES.iter().position(|v| *v == name).ok_or_else(|| {
        MhdError::Config(format!(
            "unknown variable `{name}`; expected one of {}",
            VARIABLES.join(",")
        ))
    })
}

fn header_line(h: &DumpHeader) -> String {
    format!(
        "{MAGIC} version={} nx={} ny={} x_min={} x_max={} y_min={} y_max={} time={} gamma={} variant={} problem={}\n",
        h.version, h.nx, h.ny, h.x_range.0, h.x_range.1, h.y_range.0, h.y_range.1, h.time, h.gamma, h.variant, h.problem
    )
}

fn parse_header(line: &str) -> Result<DumpHeader, MhdError> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(MAGIC) {
        return Err(MhdError::Format(format!("missing `{MAGIC}` magic word")));
    }
    let pairs: Vec<(&str, &str)> = tokens
        .map(|t| {
            t.split_once('=')
                .ok_or_else(|| MhdError::Format(format!("header token `{t}` is not key=value")))
        })
        .collect::<Result<_, _>>()?;
    let get = |key: &str| -> Result<&str, MhdError> {
        pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| MhdError::Format(format!("header lacks `{key}`")))
    };
    fn num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T, MhdError> {
        s.parse()
            .map_err(|_| MhdError::Format(format!("header value `{key}={s}` does not parse")))
    }
    let version: u32 = num("version", get("version")?)?;
    if version != FORMAT_VERSION {
        return Err(MhdError::Format(format!("unsupported version {version}")));
    }
    Ok(DumpHeader {
        version,
        nx: num("nx", get("nx")?)?,
        ny: num("ny", get("ny")?)?,
        x_range: (num("x_min", get("x_min")?)?, num("x_max", get("x_max")?)?),
        y_range: (num("y_min", get("y_min")?)?, num("y_max", get("y_max")?)?),
        time: num("time", get("time")?)?,
        gamma: num("gamma", get("gamma")?)?,
        variant: get("variant")?.to_string(),
        problem: get("problem")?.to_string(),
    })
}

pub fn write_dump(dump: &FieldDump, path: &Path) -> Result<(), MhdError> {
    let h = &dump.header;
    if dump.records.len() != h.nx * h.ny {
        return Err(MhdError::Format(format!(
            "{} records for a {}x{} grid",
            dump.records.len(),
            h.nx,
            h.ny
        )));
    }
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(header_line(h).as_bytes())?;
    for r in &dump.records {
        for x in r {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_dump(path: &Path) -> Result<FieldDump, MhdError> {
    let mut r = BufReader::new(File::open(path)?);
    let mut line = String::new();
    r.read_line(&mut line)?;
    let header = parse_header(line.trim_end())?;
    let n = header.nx * header.ny;
    let mut bytes = Vec::with_capacity(n * RECORD_LEN * 8);
    r.read_to_end(&mut bytes)?;
    if bytes.len() != n * RECORD_LEN * 8 {
        return Err(MhdError::Format(format!(
            "expected {} payload bytes, found {}",
            n * RECORD_LEN * 8,
            bytes.len()
        )));
    }
    let records = bytes
        .chunks_exact(RECORD_LEN * 8)
        .map(|rec| {
            std::array::from_fn(|i| {
                let mut b = [0u8; 8];
                b.copy_from_slice(&rec[8 * i..8 * i + 8]);
                f64::from_le_bytes(b)
            })
        })
        .collect();
    Ok(FieldDump { header, records })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// A row: varies along x at fixed y.
    X,
    /// A column: varies along y at fixed x.
    Y,
}

impl std::str::FromStr for Axis {
    type Err = MhdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            _ => Err(MhdError::Config(format!("axis must be x or y, got `{s}`"))),
        }
    }
}

/// Index of the cell centre nearest to `at` among `n` uniform cells on
/// `[lo, hi]`; a tie goes to the upper cell.
pub fn nearest_center(lo: f64, hi: f64, n: usize, at: f64) -> Result<usize, MhdError> {
    if !(at >= lo && at <= hi) {
        return Err(MhdError::Config(format!("slice coordinate {at} outside [{lo}, {hi}]")));
    }
    // the nearest centre is that of the containing cell; coordinates within
    // round-off of a face count as lying on it
    let s = (at - lo) / ((hi - lo) / n as f64);
    let i = (s + 1e-9).floor();
    Ok((i.max(0.0) as usize).min(n - 1))
}

/// A row (`Axis::X`, fixed `y = at`) or column (`Axis::Y`, fixed `x = at`)
/// of the dump: the running coordinate followed by the requested variables.
pub fn slice(dump: &FieldDump, axis: Axis, at: f64, vars: &[&str]) -> Result<Vec<Vec<f64>>, MhdError> {
    let g = dump.grid()?;
    let cols: Vec<usize> = vars.iter().map(|v| variable_index(v)).collect::<Result<_, _>>()?;
    let rows = match axis {
        Axis::X => {
            let k = nearest_center(g.y_min, g.y_max, g.ny, at)?;
            (0..g.nx).map(|j| (g.x_center(j), k * g.nx + j)).collect::<Vec<_>>()
        }
        Axis::Y => {
            let j = nearest_center(g.x_min, g.x_max, g.nx, at)?;
            (0..g.ny).map(|k| (g.y_center(k), k * g.nx + j)).collect()
        }
    };
    Ok(rows
        .into_iter()
        .map(|(s, p)| {
            let mut row = vec![s];
            row.extend(cols.iter().map(|&c| dump.records[p][c]));
            row
        })
        .collect())
}

pub fn write_slice_csv(dump: &FieldDump, axis: Axis, at: f64, vars: &[&str], path: &Path) -> Result<(), MhdError> {
    let rows = slice(dump, axis, at, vars)?;
    let mut w = BufWriter::new(File::create(path)?);
    let coord = match axis {
        Axis::X => "x",
        Axis::Y => "y",
    };
    writeln!(w, "{coord},{}", vars.join(","))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| format!("{x:e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()?;
    Ok(())
}
