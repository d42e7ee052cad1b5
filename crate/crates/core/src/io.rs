//! JSON file formats for modules, barcodes and complex sequences.
//!
//! Writers produce a canonical form (entries reduced into `0..p`, barcode
//! entries in canonical order, complexes closed and sorted), so reading a
//! written file and writing it again reproduces the same bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{SimplicialComplex, ZigzagMode};
use crate::matrix::Matrix;
use crate::zigzag::{Arrow, Barcode, Grid, Interval, ZigzagModule, ZigzagType};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    /// `"f"` or `"g"`
    pub dir: String,
    /// Row-major; shape follows from `dims` and `dir`.
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub p: u64,
    #[serde(rename = "type")]
    pub ty: String,
    pub dims: Vec<usize>,
    pub maps: Vec<MapEntry>,
}

impl ModuleFile {
    pub fn from_module(m: &ZigzagModule) -> Self {
        let maps = m
            .ty()
            .arrows()
            .iter()
            .zip(m.maps())
            .map(|(a, mat)| MapEntry {
                dir: a.symbol().to_string(),
                matrix: mat
                    .to_rows()
                    .into_iter()
                    .map(|row| row.into_iter().map(i64::from).collect())
                    .collect(),
            })
            .collect();
        ModuleFile {
            p: m.field().p() as u64,
            ty: m.ty().to_string(),
            dims: m.dims().to_vec(),
            maps,
        }
    }

    pub fn to_module(&self) -> Result<ZigzagModule> {
        let field = Field::new(self.p)?;
        let ty: ZigzagType = self.ty.parse()?;
        if self.dims.len() != ty.len() {
            return Err(Error::DimensionMismatch(format!(
                "type {:?} needs {} dimensions, file lists {}",
                self.ty,
                ty.len(),
                self.dims.len()
            )));
        }
        if self.maps.len() != ty.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "type {:?} needs {} maps, file lists {}",
                self.ty,
                ty.arrows().len(),
                self.maps.len()
            )));
        }
        let maps = ty
            .arrows()
            .iter()
            .zip(&self.maps)
            .enumerate()
            .map(|(i, (&arrow, entry))| {
                let dir = match entry.dir.as_str() {
                    "f" => Arrow::Forward,
                    "g" => Arrow::Backward,
                    other => return Err(Error::Parse(format!("map {}: dir must be \"f\" or \"g\", got {other:?}", i + 1))),
                };
                if dir != arrow {
                    return Err(Error::TypeMismatch(format!(
                        "map {} has dir {:?} but the type says {:?}",
                        i + 1,
                        entry.dir,
                        arrow.symbol()
                    )));
                }
                let (rows, cols) = match arrow {
                    Arrow::Forward => (self.dims[i + 1], self.dims[i]),
                    Arrow::Backward => (self.dims[i], self.dims[i + 1]),
                };
                let found_cols = entry.matrix.first().map_or(cols, Vec::len);
                if entry.matrix.len() != rows || entry.matrix.iter().any(|r| r.len() != found_cols) || found_cols != cols {
                    return Err(Error::MapShape {
                        arrow: i + 1,
                        expected_rows: rows,
                        expected_cols: cols,
                        rows: entry.matrix.len(),
                        cols: found_cols,
                    });
                }
                let flat: Vec<i64> = entry.matrix.iter().flatten().copied().collect();
                Matrix::from_row_major(field, rows, cols, &flat)
            })
            .collect::<Result<Vec<_>>>()?;
        ZigzagModule::new(field, ty, self.dims.clone(), maps)
    }
}

pub fn read_module(text: &str) -> Result<ZigzagModule> {
    from_json::<ModuleFile>(text)?.to_module()
}

pub fn write_module(m: &ZigzagModule) -> String {
    to_json(&ModuleFile::from_module(m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarcodeEntry {
    pub birth: String,
    pub death: String,
    pub multiplicity: usize,
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BarcodeFile {
    pub grid: Vec<String>,
    pub entries: Vec<BarcodeEntry>,
}

fn grid_from_labels(labels: &[String]) -> Result<Grid> {
    let integer = Grid::Integer { len: labels.len() };
    if integer.labels() == labels {
        return Ok(integer);
    }
    if labels.len() % 2 == 1 {
        let half = Grid::HalfInteger {
            complexes: labels.len().div_ceil(2),
        };
        if half.labels() == labels {
            return Ok(half);
        }
    }
    Err(Error::Parse(format!(
        "grid labels must be \"1\", \"2\", ... or \"1\", \"1.5\", \"2\", ...; got {labels:?}"
    )))
}

impl BarcodeFile {
    pub fn from_barcode(bc: &Barcode) -> Self {
        let g = bc.grid();
        BarcodeFile {
            grid: g.labels(),
            entries: bc
                .iter()
                .map(|(iv, dim, m)| BarcodeEntry {
                    birth: g.label(iv.birth),
                    death: g.label(iv.death),
                    multiplicity: m,
                    dim,
                })
                .collect(),
        }
    }

    pub fn to_barcode(&self) -> Result<Barcode> {
        let grid = grid_from_labels(&self.grid)?;
        let mut bc = Barcode::new(grid);
        for e in &self.entries {
            if e.multiplicity == 0 {
                return Err(Error::Parse("multiplicities must be positive".into()));
            }
            let iv = Interval::new(grid.position(&e.birth)?, grid.position(&e.death)?)?;
            bc.add(iv, e.dim, e.multiplicity);
        }
        Ok(bc)
    }
}

pub fn read_barcode(text: &str) -> Result<Barcode> {
    from_json::<BarcodeFile>(text)?.to_barcode()
}

pub fn write_barcode(bc: &Barcode) -> String {
    to_json(&BarcodeFile::from_barcode(bc))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSequenceFile {
    pub p: u64,
    pub vertices: usize,
    pub complexes: Vec<Vec<Vec<usize>>>,
    pub mode: String,
    /// Inclusive range `[min, max]` of homological degrees.
    pub dims: [usize; 2],
}

/// A parsed complex sequence file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexSequence {
    pub field: Field,
    pub complexes: Vec<SimplicialComplex>,
    pub mode: ZigzagMode,
    pub degrees: std::ops::RangeInclusive<usize>,
    /// Faces that were missing from the file and added on load.
    pub added_faces: usize,
}

impl ComplexSequenceFile {
    pub fn from_sequence(seq: &ComplexSequence) -> Self {
        let complexes = seq
            .complexes
            .iter()
            .map(|c| {
                let mut s: Vec<Vec<usize>> = c.simplices().cloned().collect();
                s.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                s
            })
            .collect();
        ComplexSequenceFile {
            p: seq.field.p() as u64,
            vertices: seq.complexes.first().map_or(0, SimplicialComplex::vertex_count),
            complexes,
            mode: seq.mode.to_string(),
            dims: [*seq.degrees.start(), *seq.degrees.end()],
        }
    }

    pub fn to_sequence(&self) -> Result<ComplexSequence> {
        let field = Field::new(self.p)?;
        let mode: ZigzagMode = self.mode.parse()?;
        if self.dims[0] > self.dims[1] {
            return Err(Error::Parse(format!("empty degree range {:?}", self.dims)));
        }
        if self.complexes.is_empty() {
            return Err(Error::Complex("no complexes given".into()));
        }
        let mut added_faces = 0;
        let complexes = self
            .complexes
            .iter()
            .map(|c| {
                let (cx, added) = SimplicialComplex::closure(self.vertices, c.iter().cloned())?;
                added_faces += added;
                Ok(cx)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComplexSequence {
            field,
            complexes,
            mode,
            degrees: self.dims[0]..=self.dims[1],
            added_faces,
        })
    }
}

pub fn read_complex_sequence(text: &str) -> Result<ComplexSequence> {
    from_json::<ComplexSequenceFile>(text)?.to_sequence()
}

pub fn write_complex_sequence(seq: &ComplexSequence) -> String {
    to_json(&ComplexSequenceFile::from_sequence(seq))
}

pub fn write_json<T: Serialize>(value: &T) -> String {
    to_json(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{plant, random_type, Rng};

    const CAUTION1: &str = r#"{
        "p": 2, "type": "gf", "dims": [1, 2, 1],
        "maps": [{"dir": "g", "matrix": [[1, 0]]}, {"dir": "f", "matrix": [[0, 1]]}]
    }"#;

    #[test]
    fn reads_caution1() {
        let m = read_module(CAUTION1).unwrap();
        assert_eq!(m.dims(), &[1, 2, 1]);
        let again = write_module(&m);
        assert_eq!(write_module(&read_module(&again).unwrap()), again);
    }

    #[test]
    fn rejects_bad_module_files() {
        let bad_dir = CAUTION1.replace(r#""dir": "g""#, r#""dir": "f""#);
        assert!(matches!(read_module(&bad_dir), Err(Error::TypeMismatch(_))));
        let bad_shape = CAUTION1.replace("[[1, 0]]", "[[1, 0, 1]]");
        assert!(matches!(read_module(&bad_shape), Err(Error::MapShape { arrow: 1, .. })));
        let ragged = CAUTION1.replace("[[0, 1]]", "[[0, 1], [1]]");
        assert!(read_module(&ragged).is_err());
        assert!(matches!(read_module(&CAUTION1.replace("\"p\": 2", "\"p\": 4")), Err(Error::InvalidModulus(4))));
        assert!(matches!(read_module("{"), Err(Error::Parse(_))));
        assert!(read_module(&CAUTION1.replace("\"p\": 2,", "")).is_err());
        assert!(read_module(&CAUTION1.replace("\"p\": 2,", "\"p\": 2, \"extra\": 1,")).is_err());
    }

    #[test]
    fn zero_dimensional_spaces_round_trip() {
        let text = r#"{"p": 3, "type": "fg", "dims": [0, 2, 0],
            "maps": [{"dir": "f", "matrix": [[], []]}, {"dir": "g", "matrix": [[], []]}]}"#;
        let m = read_module(text).unwrap();
        assert_eq!(m.map(1).shape(), (2, 0));
        assert_eq!(m.map(2).shape(), (2, 0));
        let out = write_module(&m);
        assert_eq!(read_module(&out).unwrap(), m);
    }

    #[test]
    fn negative_entries_are_reduced() {
        let text = CAUTION1.replace("\"p\": 2", "\"p\": 5").replace("[[0, 1]]", "[[0, -1]]");
        let m = read_module(&text).unwrap();
        assert_eq!(m.map(2).get(0, 1), 4);
    }

    #[test]
    fn planted_modules_round_trip() {
        for seed in 0..20 {
            let t = random_type(&mut Rng::new(seed), 5);
            let m = plant(seed, &t, 5, Field::new(5).unwrap()).module;
            let text = write_module(&m);
            assert_eq!(read_module(&text).unwrap(), m);
            assert_eq!(write_module(&read_module(&text).unwrap()), text);
        }
    }

    #[test]
    fn barcode_round_trip_on_both_grids() {
        let bc = Barcode::from_intervals(4, [(1, 2), (1, 3), (3, 3), (3, 4), (3, 4)]);
        let text = write_barcode(&bc);
        assert_eq!(read_barcode(&text).unwrap(), bc);
        assert_eq!(write_barcode(&read_barcode(&text).unwrap()), text);

        let mut half = Barcode::new(Grid::HalfInteger { complexes: 2 });
        half.add(Interval::new(1, 3).unwrap(), Some(0), 1);
        half.add(Interval::new(2, 2).unwrap(), Some(1), 1);
        let text = write_barcode(&half);
        assert!(text.contains("\"1.5\""));
        assert_eq!(read_barcode(&text).unwrap(), half);
        assert_eq!(write_barcode(&read_barcode(&text).unwrap()), text);
    }

    #[test]
    fn barcode_entries_merge_and_validate() {
        let text = r#"{"grid": ["1", "2"], "entries": [
            {"birth": "1", "death": "2", "multiplicity": 1, "dim": null},
            {"birth": "1", "death": "2", "multiplicity": 2, "dim": null}]}"#;
        let bc = read_barcode(text).unwrap();
        assert_eq!(bc.total(), 3);
        assert_eq!(bc.distinct(), 1);
        assert!(read_barcode(&text.replace("\"death\": \"2\", \"multiplicity\": 1", "\"death\": \"3\", \"multiplicity\": 1")).is_err());
        assert!(read_barcode(r#"{"grid": ["1", "3"], "entries": []}"#).is_err());
        assert!(read_barcode(r#"{"grid": ["1", "2"], "entries": [{"birth": "2", "death": "1", "multiplicity": 1, "dim": null}]}"#).is_err());
    }

    #[test]
    fn complex_sequences_close_and_round_trip() {
        let text = r#"{"p": 2, "vertices": 4, "mode": "union", "dims": [0, 1],
            "complexes": [[[0, 1], [1, 2]], [[2, 3], [0, 3]]]}"#;
        let seq = read_complex_sequence(text).unwrap();
        assert_eq!(seq.added_faces, 6);
        assert_eq!(seq.complexes[0].len(), 5);
        let out = write_complex_sequence(&seq);
        let again = read_complex_sequence(&out).unwrap();
        assert_eq!(again.added_faces, 0);
        assert_eq!(again.complexes, seq.complexes);
        assert_eq!(write_complex_sequence(&again), out);
        assert!(read_complex_sequence(&text.replace("[2, 3]", "[2, 4]")).is_err());
        assert!(read_complex_sequence(&text.replace("union", "sum")).is_err());
    }
}
