//! C ABI over the `lexsim` core.
//!
//! Every fallible function returns a [`LexsimStatus`]; on failure the
//! message is available from [`lexsim_last_error`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with [`lexsim_string_free`]. Corpus handles
//! are released with [`lexsim_corpus_free`]. Panics never cross the
//! boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use lexsim::corpus::CorpusStore;
use lexsim::report::{ingest, AnalysisConfig};
use lexsim::similarity;
use lexsim::stats;
use lexsim::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexsimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Data = 4,
    BackendUnavailable = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LexsimTTest {
    pub t: f64,
    pub df: f64,
    pub p: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LexsimInterval {
    pub lo: f64,
    pub hi: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LexsimAnova {
    pub f: f64,
    pub df_between: f64,
    pub df_within: f64,
    pub p: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LexsimLoss {
    pub total: f64,
    pub mse: f64,
    pub kl: f64,
}

/// Opaque handle to a loaded corpus.
pub struct LexsimCorpus {
    store: CorpusStore,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Status(LexsimStatus, String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &Error) -> LexsimStatus {
    match e.exit_code() {
        2 => LexsimStatus::Config,
        4 => LexsimStatus::BackendUnavailable,
        _ => LexsimStatus::Data,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LexsimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LexsimStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal panic: {msg}"));
            LexsimStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(LexsimStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::Status(LexsimStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn slice_arg<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::Status(LexsimStatus::Data, e.to_string()))?;
    write_out(out, c.into_raw())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lexsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lexsim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lexsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a corpus directory. `manifest_path` may be NULL to use
/// `manifest.json` in the directory or, failing that, every corpus file.
#[no_mangle]
pub unsafe extern "C" fn lexsim_corpus_load(
    corpus_dir: *const c_char,
    manifest_path: *const c_char,
    out: *mut *mut LexsimCorpus,
) -> LexsimStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let dir = str_arg(corpus_dir, "corpus_dir")?;
        let manifest =
            if manifest_path.is_null() { None } else { Some(PathBuf::from(str_arg(manifest_path, "manifest_path")?)) };
        let config = AnalysisConfig { corpus_dir: dir.into(), manifest, ..Default::default() };
        let store = ingest(&config)?;
        out.write(Box::into_raw(Box::new(LexsimCorpus { store })));
        Ok(())
    })
}

/// Number of documents; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn lexsim_corpus_document_count(corpus: *const LexsimCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.store.documents().len())
}

/// Canonical JSON of the corpus; free with `lexsim_string_free`.
#[no_mangle]
pub unsafe extern "C" fn lexsim_corpus_to_json(corpus: *const LexsimCorpus, out: *mut *mut c_char) -> LexsimStatus {
    guard(|| {
        let c = corpus.as_ref().ok_or_else(|| null("corpus"))?;
        write_string(out, c.store.to_json()?)
    })
}

/// Releases a corpus handle. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn lexsim_corpus_free(corpus: *mut LexsimCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lexsim_cosine(u: *const f64, v: *const f64, dim: usize, out: *mut f64) -> LexsimStatus {
    guard(|| {
        let r = similarity::cosine(slice_arg(u, dim, "u")?, slice_arg(v, dim, "v")?)?;
        write_out(out, r)
    })
}

/// `1 − (2/π)·θ` for the angle θ between `u` and `v`.
#[no_mangle]
pub unsafe extern "C" fn lexsim_angular_similarity(
    u: *const f64,
    v: *const f64,
    dim: usize,
    out: *mut f64,
) -> LexsimStatus {
    guard(|| {
        let r = similarity::angular_similarity(slice_arg(u, dim, "u")?, slice_arg(v, dim, "v")?)?;
        write_out(out, r)
    })
}

fn ttest(r: stats::TTest) -> LexsimTTest {
    LexsimTTest { t: r.t, df: r.df, p: r.p }
}

#[no_mangle]
pub unsafe extern "C" fn lexsim_welch_t_test(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    out: *mut LexsimTTest,
) -> LexsimStatus {
    guard(|| {
        let r = stats::welch_t_test(slice_arg(a, na, "a")?, slice_arg(b, nb, "b")?)?;
        write_out(out, ttest(r))
    })
}

#[no_mangle]
pub unsafe extern "C" fn lexsim_student_t_test(
    a: *const f64,
    na: usize,
    b: *const f64,
    nb: usize,
    out: *mut LexsimTTest,
) -> LexsimStatus {
    guard(|| {
        let r = stats::student_t_test(slice_arg(a, na, "a")?, slice_arg(b, nb, "b")?)?;
        write_out(out, ttest(r))
    })
}

/// Percentile bootstrap interval of the mean.
#[no_mangle]
pub unsafe extern "C" fn lexsim_bootstrap_ci(
    values: *const f64,
    n: usize,
    iterations: usize,
    level: f64,
    seed: u64,
    out: *mut LexsimInterval,
) -> LexsimStatus {
    guard(|| {
        let r = stats::bootstrap_ci(slice_arg(values, n, "values")?, iterations, level, seed)?;
        write_out(out, LexsimInterval { lo: r.lo, hi: r.hi })
    })
}

/// One-way ANOVA. `values` holds the groups back to back; `group_sizes`
/// gives the length of each of the `n_groups` groups.
#[no_mangle]
pub unsafe extern "C" fn lexsim_one_way_anova(
    values: *const f64,
    group_sizes: *const usize,
    n_groups: usize,
    out: *mut LexsimAnova,
) -> LexsimStatus {
    guard(|| {
        if group_sizes.is_null() && n_groups > 0 {
            return Err(null("group_sizes"));
        }
        let sizes: &[usize] = if n_groups == 0 { &[] } else { std::slice::from_raw_parts(group_sizes, n_groups) };
        let total = sizes
            .iter()
            .try_fold(0usize, |acc, &s| acc.checked_add(s))
            .ok_or_else(|| Failure::Status(LexsimStatus::Data, "group sizes overflow".into()))?;
        let flat = slice_arg(values, total, "values")?;
        let mut groups = BTreeMap::new();
        let mut start = 0;
        for (i, &s) in sizes.iter().enumerate() {
            groups.insert(format!("{i:020}"), flat[start..start + s].to_vec());
            start += s;
        }
        let r = stats::one_way_anova(&groups)?;
        write_out(out, LexsimAnova { f: r.f, df_between: r.df_between, df_within: r.df_within, p: r.p })
    })
}

/// Distillation loss over `n` items of dimension `dim`. `teacher` and
/// `student` are row-major `n × dim`; `lambdas` has `n` entries.
#[no_mangle]
pub unsafe extern "C" fn lexsim_distillation_loss(
    teacher: *const f64,
    student: *const f64,
    lambdas: *const f64,
    n: usize,
    dim: usize,
    out: *mut LexsimLoss,
) -> LexsimStatus {
    guard(|| {
        let len = n.checked_mul(dim).ok_or_else(|| Failure::Status(LexsimStatus::Data, "n * dim overflows".into()))?;
        let t = slice_arg(teacher, len, "teacher")?;
        let s = slice_arg(student, len, "student")?;
        let l = slice_arg(lambdas, n, "lambdas")?;
        let batch: Vec<stats::DistillationInputs> = (0..n)
            .map(|i| stats::DistillationInputs {
                teacher: t[i * dim..(i + 1) * dim].to_vec(),
                student: s[i * dim..(i + 1) * dim].to_vec(),
                lambda: l[i],
            })
            .collect();
        let r = stats::distillation_loss(&batch)?;
        write_out(out, LexsimLoss { total: r.total, mse: r.mse, kl: r.kl })
    })
}

/// Mock embedding of `text` for `term`, written to `out[0..dim]`.
#[no_mangle]
pub unsafe extern "C" fn lexsim_mock_embed(
    text: *const c_char,
    term: *const c_char,
    dim: usize,
    seed: u64,
    out: *mut f64,
) -> LexsimStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let term = str_arg(term, "term")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let v = lexsim::embedding::mock::mock_components(text, term, dim, seed)?;
        ptr::copy_nonoverlapping(v.as_ptr(), out, v.len());
        Ok(())
    })
}

/// Runs the whole pipeline. `config_json` is an analysis config object
/// (every field optional except `pairs`); the canonical report JSON is
/// written to `*out_report`.
#[no_mangle]
pub unsafe extern "C" fn lexsim_run_pipeline(config_json: *const c_char, out_report: *mut *mut c_char) -> LexsimStatus {
    guard(|| {
        if out_report.is_null() {
            return Err(null("out_report"));
        }
        let json = str_arg(config_json, "config_json")?;
        let config: AnalysisConfig =
            serde_json::from_str(json).map_err(|e| Failure::Status(LexsimStatus::Config, format!("config: {e}")))?;
        let report = lexsim::run_pipeline(&config)?;
        write_string(out_report, report.to_json()?)
    })
}
