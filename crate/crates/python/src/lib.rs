//! Python bindings. Presentations, algebras and maps cross the boundary as the same JSON
//! documents the command-line tool reads and writes.

use homprop::algebra::{check_algebra, StructureMap};
use homprop::builtins::{builtin, BUILTIN_NAMES};
use homprop::io::{
    algebra_from_str, algebra_to_string, parse_json, plan_from_str, presentation_from_str,
    presentation_to_string, LinearMapFile,
};
use homprop::linalg::LinearMap;
use homprop::presentation::{HomPlan, Presentation as CorePresentation};
use homprop::twist::{self, HomTarget, TwistError};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    pyhomprop,
    PreconditionError,
    PyException,
    "A precondition of a twisting operation failed."
);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn twist_error(e: TwistError) -> PyErr {
    match e {
        TwistError::Argument(_)
        | TwistError::Linalg(_)
        | TwistError::Algebra(_)
        | TwistError::Presentation(_) => value_error(e),
        other => PreconditionError::new_err(other.to_string()),
    }
}

/// A PROP presentation by generators and relations.
#[pyclass(module = "pyhomprop")]
#[derive(Clone)]
struct Presentation {
    inner: CorePresentation,
    default_plan: Option<HomPlan>,
}

#[pymethods]
impl Presentation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = presentation_from_str(text, "<python>").map_err(value_error)?;
        Ok(Presentation {
            inner,
            default_plan: None,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (name, ainf_sign_offset = 0))]
    fn builtin(name: &str, ainf_sign_offset: u8) -> PyResult<Self> {
        let b = builtin(name, ainf_sign_offset).map_err(value_error)?;
        Ok(Presentation {
            inner: b.presentation,
            default_plan: b.plan,
        })
    }

    fn to_json(&self) -> String {
        presentation_to_string(&self.inner)
    }

    fn relations(&self) -> Vec<String> {
        self.inner.relations().iter().map(|r| r.to_string()).collect()
    }

    fn unit_count(&self) -> usize {
        self.inner.unit_count()
    }

    fn is_normal(&self) -> bool {
        self.inner.is_normal()
    }

    /// Per-relation degree report as JSON.
    fn normality(&self) -> String {
        serde_json::to_string(&self.inner.normality().relations).expect("serializable")
    }

    fn is_homified(&self) -> bool {
        self.inner.hom().is_some()
    }

    /// `plan` is "multiplicative", "theta-min", "theta-max" or a plan as JSON.
    #[pyo3(signature = (plan = None))]
    fn homify(&self, plan: Option<&str>) -> PyResult<Self> {
        let target = self.target(plan)?;
        let inner = twist::homify(&self.inner, &target).map_err(value_error)?;
        Ok(Presentation {
            inner,
            default_plan: None,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Presentation({} generators, {} relations)",
            self.inner.signature().generators().len(),
            self.inner.relations().len()
        )
    }
}

impl Presentation {
    fn target(&self, plan: Option<&str>) -> PyResult<HomTarget> {
        let labels = HomPlan::all_labels(self.inner.unit_count());
        let target = match plan {
            Some("multiplicative") => HomTarget::Multiplicative,
            Some("theta-min") => HomTarget::Typed(HomPlan::theta_min(&labels).map_err(value_error)?),
            Some("theta-max") => HomTarget::Typed(HomPlan::theta_max(&labels).map_err(value_error)?),
            Some(text) => HomTarget::Typed(plan_from_str(text, "<python>").map_err(value_error)?),
            None => match &self.default_plan {
                Some(p) => HomTarget::Typed(p.clone()),
                None if labels.is_empty() => HomTarget::Multiplicative,
                None => HomTarget::Typed(HomPlan::theta_min(&labels).map_err(value_error)?),
            },
        };
        if let HomTarget::Typed(p) = &target {
            p.validate(self.inner.unit_count()).map_err(value_error)?;
        }
        Ok(target)
    }
}

/// An algebra: a graded space with one matrix per generator.
#[pyclass(module = "pyhomprop")]
#[derive(Clone)]
struct Algebra {
    inner: StructureMap,
}

#[pymethods]
impl Algebra {
    /// Bare matrices need `presentation` to supply biarity and degree.
    #[staticmethod]
    #[pyo3(signature = (text, presentation = None))]
    fn from_json(text: &str, presentation: Option<&Presentation>) -> PyResult<Self> {
        let sig = presentation.map(|p| p.inner.signature());
        let inner = algebra_from_str(text, "<python>", sig).map_err(value_error)?;
        if let Some(sig) = sig {
            inner.validate(sig).map_err(value_error)?;
        }
        Ok(Algebra { inner })
    }

    fn to_json(&self) -> String {
        algebra_to_string(&self.inner)
    }

    fn dim(&self) -> usize {
        self.inner.space().dim()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.maps().keys().cloned().collect()
    }

    /// Whether every relation vanishes, with the per-relation report as JSON.
    fn check(&self, presentation: &Presentation) -> PyResult<(bool, String)> {
        let report = check_algebra(&self.inner, &presentation.inner).map_err(value_error)?;
        let json = serde_json::to_string(&report.relations).expect("serializable");
        Ok((report.all_passed(), json))
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(dim {}, maps {:?})",
            self.inner.space().dim(),
            self.generators()
        )
    }
}

fn endomorphism(lambda: &StructureMap, beta: &str) -> PyResult<LinearMap> {
    let file: LinearMapFile = parse_json(beta, "<python>").map_err(value_error)?;
    file.to_map(lambda.space(), lambda.space()).map_err(value_error)
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    BUILTIN_NAMES.to_vec()
}

/// Twists a Hom-algebra over a hom-ified presentation along a morphism `beta`.
#[pyfunction]
fn twist_algebra(algebra: &Algebra, beta: &str, hom: &Presentation) -> PyResult<Algebra> {
    let beta = endomorphism(&algebra.inner, beta)?;
    let result = twist::twist(&algebra.inner, &beta, &hom.inner).map_err(twist_error)?;
    Ok(Algebra {
        inner: result.twisted,
    })
}

/// Turns an algebra and an endomorphism of it into a Hom-algebra; returns it with the
/// hom-ified presentation.
#[pyfunction]
#[pyo3(signature = (algebra, beta, presentation, plan = None))]
fn hom_twist(
    algebra: &Algebra,
    beta: &str,
    presentation: &Presentation,
    plan: Option<&str>,
) -> PyResult<(Algebra, Presentation)> {
    let beta = endomorphism(&algebra.inner, beta)?;
    let target = presentation.target(plan)?;
    let (result, q) =
        twist::hom_twist(&algebra.inner, &beta, &presentation.inner, &target).map_err(twist_error)?;
    Ok((
        Algebra {
            inner: result.twisted,
        },
        Presentation {
            inner: q,
            default_plan: None,
        },
    ))
}

/// The `n`-th derived Hom-algebra of a multiplicative one.
#[pyfunction]
fn derived(algebra: &Algebra, hom: &Presentation, n: u32) -> PyResult<Algebra> {
    let result = twist::derived_sequence(&algebra.inner, &hom.inner, n).map_err(twist_error)?;
    Ok(Algebra {
        inner: result.twisted,
    })
}

/// Characteristic polynomial of a degree-0 endomorphism of the algebra's space, as
/// coefficient strings in ascending degree.
#[pyfunction]
fn char_poly(algebra: &Algebra, beta: &str) -> PyResult<Vec<String>> {
    let beta = endomorphism(&algebra.inner, beta)?;
    let poly = twist::conjugacy_invariant(&beta).map_err(twist_error)?;
    Ok(poly.coefficients().iter().map(|c| c.to_string()).collect())
}

#[pymodule]
pub fn pyhomprop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Algebra>()?;
    m.add("PreconditionError", m.py().get_type_bound::<PreconditionError>())?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(twist_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(hom_twist, m)?)?;
    m.add_function(wrap_pyfunction!(derived, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    Ok(())
}
