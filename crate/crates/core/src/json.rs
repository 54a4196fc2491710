//! File formats. All numeric payloads are rational literals: a JSON number
//! for integers, or a string `"p/q"` with integer `p` and positive integer
//! `q`. Tensors are nested arrays indexed `[i][j][k]` = coefficient of the
//! `k`-th basis vector in `e_i * e_j`.

use std::path::{Path, PathBuf};

use num::One;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Trialgebra;
use crate::bimodule::TriBimodule;
use crate::coho2::CocycleTriple;
use crate::deformation::{FormalAutomorphism, TruncatedDeformation};
use crate::linalg::{Matrix, Scalar, Tensor3};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

/// A rational in its wire form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use num::ToPrimitive;
        if self.0.denom().is_one() {
            if let Some(n) = self.0.numer().to_i64() {
                return serializer.serialize_i64(n);
            }
            return serializer.serialize_str(&format!("{}/1", self.0.numer()));
        }
        serializer.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;

        impl serde::de::Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }

            fn visit_i64<E: DeError>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(crate::linalg::int(v)))
            }

            fn visit_u64<E: DeError>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: DeError>(self, v: f64) -> Result<Rat, E> {
                Err(E::custom(format!(
                    "non-integer number {v}; write rationals as \"p/q\" strings"
                )))
            }

            fn visit_str<E: DeError>(self, v: &str) -> Result<Rat, E> {
                if !v.contains('/') {
                    return Err(E::custom(format!(
                        "string rational {v:?} must have the form \"p/q\""
                    )));
                }
                crate::linalg::parse_rat(v)
                    .map(Rat)
                    .ok_or_else(|| E::custom(format!("malformed rational {v:?}")))
            }
        }

        deserializer.deserialize_any(RatVisitor)
    }
}

type Mat = Vec<Vec<Rat>>;
type Cube = Vec<Vec<Vec<Rat>>>;

fn mat_to_matrix(m: &Mat, what: &str) -> Result<Matrix, String> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(format!("{what}: ragged matrix"));
    }
    Ok(Matrix::from_fn(rows, cols, |r, c| m[r][c].0.clone()))
}

fn matrix_to_mat(m: &Matrix) -> Mat {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| Rat(x.clone())).collect())
        .collect()
}

fn cube_to_tensor(c: &Cube, what: &str) -> Result<Tensor3, String> {
    let d0 = c.len();
    let d1 = c.first().map_or(0, |x| x.len());
    let d2 = c.first().and_then(|x| x.first()).map_or(0, |x| x.len());
    let mut data = Vec::with_capacity(d0 * d1 * d2);
    for plane in c {
        if plane.len() != d1 {
            return Err(format!("{what}: ragged tensor"));
        }
        for row in plane {
            if row.len() != d2 {
                return Err(format!("{what}: ragged tensor"));
            }
            data.extend(row.iter().map(|x| x.0.clone()));
        }
    }
    Ok(Tensor3::from_data(d0, d1, d2, data))
}

fn tensor_to_cube(t: &Tensor3) -> Cube {
    let (d0, d1, _) = t.dims();
    (0..d0)
        .map(|i| {
            (0..d1)
                .map(|j| {
                    t.basis_slice(i, j)
                        .iter()
                        .map(|x| Rat(x.clone()))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `{"dim": n, "left": [[[q]]], "right": ..., "middle": ..., "alpha": [[q]], "beta": [[q]]}`
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub left: Cube,
    pub right: Cube,
    pub middle: Cube,
    pub alpha: Mat,
    pub beta: Mat,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Trialgebra, String> {
        let t = Trialgebra::new(
            cube_to_tensor(&self.left, "left")?,
            cube_to_tensor(&self.right, "right")?,
            cube_to_tensor(&self.middle, "middle")?,
            mat_to_matrix(&self.alpha, "alpha")?,
            mat_to_matrix(&self.beta, "beta")?,
        )
        .map_err(|e| e.to_string())?;
        if t.dim() != self.dim {
            return Err(format!(
                "declared dim {} but alpha is {}x{}",
                self.dim,
                t.dim(),
                t.dim()
            ));
        }
        Ok(t)
    }

    pub fn from_algebra(t: &Trialgebra) -> Self {
        use crate::trees::OpLabel;
        AlgebraFile {
            dim: t.dim(),
            left: tensor_to_cube(t.tensor(OpLabel::Left)),
            right: tensor_to_cube(t.tensor(OpLabel::Right)),
            middle: tensor_to_cube(t.tensor(OpLabel::Middle)),
            alpha: matrix_to_mat(t.alpha()),
            beta: matrix_to_mat(t.beta()),
        }
    }
}

/// Module file paired with an algebra file on the command line.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    pub lact_left: Cube,
    pub lact_right: Cube,
    pub lact_middle: Cube,
    pub ract_left: Cube,
    pub ract_right: Cube,
    pub ract_middle: Cube,
    #[serde(rename = "alphaV")]
    pub alpha_v: Mat,
    #[serde(rename = "betaV")]
    pub beta_v: Mat,
}

impl ModuleFile {
    pub fn to_module(&self, over: &Trialgebra) -> Result<TriBimodule, String> {
        let module = TriBimodule::new(
            over.clone(),
            [
                cube_to_tensor(&self.lact_left, "lact_left")?,
                cube_to_tensor(&self.lact_right, "lact_right")?,
                cube_to_tensor(&self.lact_middle, "lact_middle")?,
            ],
            [
                cube_to_tensor(&self.ract_left, "ract_left")?,
                cube_to_tensor(&self.ract_right, "ract_right")?,
                cube_to_tensor(&self.ract_middle, "ract_middle")?,
            ],
            mat_to_matrix(&self.alpha_v, "alphaV")?,
            mat_to_matrix(&self.beta_v, "betaV")?,
        )
        .map_err(|e| e.to_string())?;
        if module.dim() != self.dim {
            return Err(format!("declared dim {} but alphaV differs", self.dim));
        }
        Ok(module)
    }

    pub fn from_module(module: &TriBimodule) -> Self {
        use crate::trees::OpLabel::{Left, Middle, Right};
        ModuleFile {
            dim: module.dim(),
            lact_left: tensor_to_cube(module.lact_tensor(Left)),
            lact_right: tensor_to_cube(module.lact_tensor(Right)),
            lact_middle: tensor_to_cube(module.lact_tensor(Middle)),
            ract_left: tensor_to_cube(module.ract_tensor(Left)),
            ract_right: tensor_to_cube(module.ract_tensor(Right)),
            ract_middle: tensor_to_cube(module.ract_tensor(Middle)),
            alpha_v: matrix_to_mat(module.alpha_v()),
            beta_v: matrix_to_mat(module.beta_v()),
        }
    }
}

/// `{"f_left": [[[q]]], "f_right": ..., "f_middle": ...}` with
/// `[i][j][k]` = coefficient of `v_k` in `f(e_i, e_j)`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub f_left: Cube,
    pub f_right: Cube,
    pub f_middle: Cube,
}

impl CocycleFile {
    pub fn to_cocycle(&self) -> Result<CocycleTriple, String> {
        CocycleTriple::new(
            cube_to_tensor(&self.f_left, "f_left")?,
            cube_to_tensor(&self.f_right, "f_right")?,
            cube_to_tensor(&self.f_middle, "f_middle")?,
        )
        .map_err(|e| e.to_string())
    }

    pub fn from_cocycle(f: &CocycleTriple) -> Self {
        use crate::trees::OpLabel::{Left, Middle, Right};
        CocycleFile {
            f_left: tensor_to_cube(f.component(Left)),
            f_right: tensor_to_cube(f.component(Right)),
            f_middle: tensor_to_cube(f.component(Middle)),
        }
    }
}

/// The base of a deformation file: inline algebra object or a path relative
/// to the deformation file.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(Box<AlgebraFile>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationTermFile {
    pub left: Cube,
    pub right: Cube,
    pub middle: Cube,
}

/// `{"order": N, "base": <algebra or path>, "terms": [term; N+1]}` with
/// `terms[0]` equal to the base tensors.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub order: usize,
    pub base: BaseRef,
    pub terms: Vec<DeformationTermFile>,
}

impl DeformationFile {
    pub fn to_deformation(&self, dir: &Path) -> Result<TruncatedDeformation, JsonError> {
        let base = match &self.base {
            BaseRef::Inline(file) => file.to_algebra().map_err(|message| JsonError::Invalid {
                path: dir.join("<inline base>"),
                message,
            })?,
            BaseRef::Path(rel) => load_algebra(&dir.join(rel))?,
        };
        let here = dir.join("<deformation>");
        if self.terms.len() != self.order + 1 {
            return Err(JsonError::Invalid {
                path: here,
                message: format!(
                    "order {} needs {} terms, found {}",
                    self.order,
                    self.order + 1,
                    self.terms.len()
                ),
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let triple = [
                cube_to_tensor(&term.left, "left"),
                cube_to_tensor(&term.right, "right"),
                cube_to_tensor(&term.middle, "middle"),
            ];
            let mut out = Vec::with_capacity(3);
            for t in triple {
                out.push(t.map_err(|message| JsonError::Invalid {
                    path: here.clone(),
                    message,
                })?);
            }
            let middle = out.pop().unwrap();
            let right = out.pop().unwrap();
            let left = out.pop().unwrap();
            terms.push([left, right, middle]);
        }
        TruncatedDeformation::from_terms(base, terms).map_err(|e| JsonError::Invalid {
            path: here,
            message: e.to_string(),
        })
    }
}

/// `{"order": N, "maps": [[[q]]; N+1]}` with `maps[0]` the identity.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismFile {
    pub order: usize,
    pub maps: Vec<Mat>,
}

impl AutomorphismFile {
    pub fn to_automorphism(&self) -> Result<FormalAutomorphism, String> {
        if self.maps.len() != self.order + 1 {
            return Err(format!(
                "order {} needs {} maps, found {}",
                self.order,
                self.order + 1,
                self.maps.len()
            ));
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (i, m) in self.maps.iter().enumerate() {
            maps.push(mat_to_matrix(m, &format!("maps[{i}]"))?);
        }
        FormalAutomorphism::from_maps(maps).map_err(|e| e.to_string())
    }
}

/// `{"matrix": [[q]]}`, used for plain linear maps on the command line.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub matrix: Mat,
}

impl MapFile {
    pub fn to_matrix(&self) -> Result<Matrix, String> {
        mat_to_matrix(&self.matrix, "matrix")
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        MapFile {
            matrix: matrix_to_mat(m),
        }
    }
}

fn read_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, JsonError> {
    let text = std::fs::read_to_string(path).map_err(|source| JsonError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| JsonError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn invalid(path: &Path, message: String) -> JsonError {
    JsonError::Invalid {
        path: path.to_path_buf(),
        message,
    }
}

pub fn load_algebra(path: &Path) -> Result<Trialgebra, JsonError> {
    let file: AlgebraFile = read_file(path)?;
    file.to_algebra().map_err(|m| invalid(path, m))
}

pub fn load_module(path: &Path, over: &Trialgebra) -> Result<TriBimodule, JsonError> {
    let file: ModuleFile = read_file(path)?;
    file.to_module(over).map_err(|m| invalid(path, m))
}

pub fn load_cocycle(path: &Path) -> Result<CocycleTriple, JsonError> {
    let file: CocycleFile = read_file(path)?;
    file.to_cocycle().map_err(|m| invalid(path, m))
}

pub fn load_deformation(path: &Path) -> Result<TruncatedDeformation, JsonError> {
    let file: DeformationFile = read_file(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    file.to_deformation(dir)
}

pub fn load_automorphism(path: &Path) -> Result<FormalAutomorphism, JsonError> {
    let file: AutomorphismFile = read_file(path)?;
    file.to_automorphism().map_err(|m| invalid(path, m))
}

pub fn load_map(path: &Path) -> Result<Matrix, JsonError> {
    let file: MapFile = read_file(path)?;
    file.to_matrix().map_err(|m| invalid(path, m))
}
