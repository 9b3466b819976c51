//! C ABI for the branchlaw library.
//!
//! Conventions: every function returns a `BlStatus`; results are written
//! through out-pointers. Objects are created behind opaque handles and must
//! be released with the matching `*_free` function. On any non-OK status,
//! `bl_last_error` returns a message describing the failure; the pointer is
//! valid on the calling thread until its next call into this library.
//! Strings returned through out-pointers must be released with
//! `bl_string_free`. All functions are safe to call from multiple threads as
//! long as each handle is used from one thread at a time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use branchlaw::branching::{compute_series, BranchingSeries};
use branchlaw::chartab::load_table;
use branchlaw::error::Error;
use branchlaw::exactnum::Cyclotomic;
use branchlaw::pipeline::{prepare, GroupSource, Prepared};
use branchlaw::polyrat::Exp3;
use branchlaw::tensorrep::build_tensor_matrices;
use branchlaw::verify::{run_checks, VerifyOptions};

/// Result of every call. Values above OK mirror the process exit codes of
/// the command-line tool where a counterpart exists.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Group = 3,
    Table = 4,
    Integrality = 5,
    Rationality = 6,
    Split = 7,
    Oracle = 8,
    KeyRelation = 9,
    Verify = 10,
    Internal = 11,
    Io = 12,
    Arithmetic = 13,
    InvalidUtf8 = 14,
    IndexOutOfRange = 15,
    Panic = 16,
}

fn status_of(e: &Error) -> BlStatus {
    match e {
        Error::Parse(_) => BlStatus::Parse,
        Error::Group(_) => BlStatus::Group,
        Error::Table(_) => BlStatus::Table,
        Error::Integrality(_) => BlStatus::Integrality,
        Error::Rationality(_) => BlStatus::Rationality,
        Error::Split(_) => BlStatus::Split,
        Error::Oracle(_) => BlStatus::Oracle,
        Error::KeyRelation(_) => BlStatus::KeyRelation,
        Error::Verify(_) => BlStatus::Verify,
        Error::Internal(_) => BlStatus::Internal,
        Error::Io(_) => BlStatus::Io,
        Error::Arithmetic(_) => BlStatus::Arithmetic,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(e: &Error) -> BlStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// Run a fallible body, translating panics into a status instead of
/// unwinding across the ABI boundary.
fn guarded(body: impl FnOnce() -> BlStatus) -> BlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            BlStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, BlStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(BlStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        BlStatus::InvalidUtf8
    })
}

unsafe fn deref<'a, T>(ptr: *const T) -> Result<&'a T, BlStatus> {
    ptr.as_ref().ok_or_else(|| {
        set_error("null handle argument");
        BlStatus::NullArgument
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> BlStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return BlStatus::NullArgument;
    }
    out.write(value);
    BlStatus::Ok
}

/// An analyzed finite subgroup: class data, character table, and tensor
/// multiplicity matrices.
pub struct BlGroup {
    prepared: Prepared,
}

/// The exact multiplicity generating functions of one group.
pub struct BlSeries {
    series: BranchingSeries,
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn bl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread; empty string if none.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn bl_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned through an out-pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Analyze a group given a built-in name (`trivial`, `cyclic4`, `typeII`) or
/// the path of a generator file.
#[no_mangle]
pub unsafe extern "C" fn bl_group_new(source: *const c_char, out: *mut *mut BlGroup) -> BlStatus {
    guarded(|| {
        let source = match read_str(source) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match prepare(&GroupSource::from_group_flag(source)) {
            Ok(prepared) => write_out(out, Box::into_raw(Box::new(BlGroup { prepared }))),
            Err(e) => fail(&e),
        }
    })
}

/// Analyze a group from the text of a saved character table. `label` names
/// the group in diagnostics and may be null.
#[no_mangle]
pub unsafe extern "C" fn bl_group_new_from_table_text(
    text: *const c_char,
    label: *const c_char,
    out: *mut *mut BlGroup,
) -> BlStatus {
    guarded(|| {
        let text = match read_str(text) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let label = if label.is_null() {
            "table"
        } else {
            match read_str(label) {
                Ok(s) => s,
                Err(status) => return status,
            }
        };
        let build = || -> Result<Prepared, Error> {
            let table = load_table(text, label)?;
            let matrices = build_tensor_matrices(&table)?;
            Ok(Prepared {
                label: label.to_string(),
                group: None,
                table,
                matrices,
            })
        };
        match build() {
            Ok(prepared) => write_out(out, Box::into_raw(Box::new(BlGroup { prepared }))),
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bl_group_free(group: *mut BlGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bl_group_order(group: *const BlGroup, out: *mut u64) -> BlStatus {
    guarded(|| match deref(group) {
        Ok(g) => write_out(out, g.prepared.table.class.order),
        Err(status) => status,
    })
}

/// Number of conjugacy classes, which equals the number of irreducibles and
/// the number of series coordinates.
#[no_mangle]
pub unsafe extern "C" fn bl_group_class_count(
    group: *const BlGroup,
    out: *mut usize,
) -> BlStatus {
    guarded(|| match deref(group) {
        Ok(g) => write_out(out, g.prepared.table.num_classes()),
        Err(status) => status,
    })
}

#[no_mangle]
pub unsafe extern "C" fn bl_group_exponent(group: *const BlGroup, out: *mut u64) -> BlStatus {
    guarded(|| match deref(group) {
        Ok(g) => write_out(out, g.prepared.table.class.exponent),
        Err(status) => status,
    })
}

/// Dimension of the `index`-th irreducible in the canonical order (index 0
/// is the trivial one).
#[no_mangle]
pub unsafe extern "C" fn bl_group_irreducible_degree(
    group: *const BlGroup,
    index: usize,
    out: *mut u64,
) -> BlStatus {
    guarded(|| {
        let g = match deref(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let Some(&d) = g.prepared.table.degrees.get(index) else {
            set_error("irreducible index out of range");
            return BlStatus::IndexOutOfRange;
        };
        write_out(out, d)
    })
}

/// Run the full check suite (series construction, both independent
/// multiplicity computations, the operator identity, dimension and
/// specialization consistency) up to the given total degree. Returns OK when
/// every check passes; VERIFY with a diagnostic in `bl_last_error` otherwise.
#[no_mangle]
pub unsafe extern "C" fn bl_group_verify(group: *const BlGroup, degree: u32) -> BlStatus {
    guarded(|| {
        let g = match deref(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let opts = VerifyOptions {
            degree,
            oracles: true,
            key_relation: true,
        };
        let (report, _) = run_checks(&g.prepared, &opts);
        if report.all_passed() {
            BlStatus::Ok
        } else {
            let detail = report
                .failures()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("; ");
            set_error(&detail);
            BlStatus::Verify
        }
    })
}

/// Compute the exact multiplicity series of the group.
#[no_mangle]
pub unsafe extern "C" fn bl_series_new(
    group: *const BlGroup,
    out: *mut *mut BlSeries,
) -> BlStatus {
    guarded(|| {
        let g = match deref(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        match compute_series(&g.prepared.table, &g.prepared.matrices) {
            Ok(series) => write_out(out, Box::into_raw(Box::new(BlSeries { series }))),
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bl_series_free(series: *mut BlSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bl_series_coordinate_count(
    series: *const BlSeries,
    out: *mut usize,
) -> BlStatus {
    guarded(|| match deref(series) {
        Ok(s) => write_out(out, s.series.coords.len()),
        Err(status) => status,
    })
}

/// Multiplicity of the `coordinate`-th irreducible in the restriction of the
/// highest-weight module labeled (t, u, w).
#[no_mangle]
pub unsafe extern "C" fn bl_series_multiplicity(
    series: *const BlSeries,
    coordinate: usize,
    t: u32,
    u: u32,
    w: u32,
    out: *mut i64,
) -> BlStatus {
    guarded(|| {
        let s = match deref(series) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(f) = s.series.coords.get(coordinate) else {
            set_error("coordinate index out of range");
            return BlStatus::IndexOutOfRange;
        };
        let value = f
            .series_coeffs(t + u + w)
            .get(&Exp3::new(t, u, w))
            .cloned()
            .unwrap_or_else(Cyclotomic::zero);
        let int = value.as_rational().and_then(|r| {
            if r.is_integer() {
                r.to_integer().try_into().ok()
            } else {
                None
            }
        });
        match int {
            Some(m) => write_out(out, m),
            None => {
                set_error("series coefficient is not an integer");
                BlStatus::Rationality
            }
        }
    })
}

/// Render one coordinate as `numerator / denominator` text. The returned
/// string must be released with `bl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn bl_series_coordinate_text(
    series: *const BlSeries,
    coordinate: usize,
    out: *mut *mut c_char,
) -> BlStatus {
    guarded(|| {
        let s = match deref(series) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(f) = s.series.coords.get(coordinate) else {
            set_error("coordinate index out of range");
            return BlStatus::IndexOutOfRange;
        };
        let text = f.to_string().replace('\0', " ");
        match CString::new(text) {
            Ok(cs) => write_out(out, cs.into_raw()),
            Err(_) => {
                set_error("rendered text contains an interior NUL");
                BlStatus::Internal
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn group(name: &str) -> *mut BlGroup {
        let source = CString::new(name).unwrap();
        let mut g: *mut BlGroup = ptr::null_mut();
        let status = bl_group_new(source.as_ptr(), &mut g);
        let detail = CStr::from_ptr(bl_last_error()).to_string_lossy().into_owned();
        assert_eq!(status, BlStatus::Ok, "last error: {detail}");
        g
    }

    #[test]
    fn trivial_round_trip() {
        unsafe {
            let g = group("trivial");
            let mut order = 0u64;
            assert_eq!(bl_group_order(g, &mut order), BlStatus::Ok);
            assert_eq!(order, 1);

            let mut s: *mut BlSeries = ptr::null_mut();
            assert_eq!(bl_series_new(g, &mut s), BlStatus::Ok);
            let mut count = 0usize;
            assert_eq!(bl_series_coordinate_count(s, &mut count), BlStatus::Ok);
            assert_eq!(count, 1);

            let mut m = -1i64;
            assert_eq!(bl_series_multiplicity(s, 0, 0, 0, 0, &mut m), BlStatus::Ok);
            assert_eq!(m, 1);
            assert_eq!(bl_series_multiplicity(s, 0, 1, 0, 0, &mut m), BlStatus::Ok);
            assert_eq!(m, 4, "defining module has dimension 4");
            assert_eq!(bl_series_multiplicity(s, 0, 0, 1, 0, &mut m), BlStatus::Ok);
            assert_eq!(m, 6);

            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(bl_series_coordinate_text(s, 0, &mut text), BlStatus::Ok);
            let rendered = CStr::from_ptr(text).to_str().unwrap().to_string();
            assert!(rendered.contains('/'), "{rendered}");
            bl_string_free(text);

            bl_series_free(s);
            bl_group_free(g);
        }
    }

    #[test]
    fn cyclic_group_info_and_verify() {
        unsafe {
            let g = group("cyclic4");
            let mut classes = 0usize;
            assert_eq!(bl_group_class_count(g, &mut classes), BlStatus::Ok);
            assert_eq!(classes, 4);
            let mut exponent = 0u64;
            assert_eq!(bl_group_exponent(g, &mut exponent), BlStatus::Ok);
            assert_eq!(exponent, 4);
            let mut d = 0u64;
            assert_eq!(bl_group_irreducible_degree(g, 0, &mut d), BlStatus::Ok);
            assert_eq!(d, 1);
            assert_eq!(
                bl_group_irreducible_degree(g, 9, &mut d),
                BlStatus::IndexOutOfRange
            );

            assert_eq!(bl_group_verify(g, 3), BlStatus::Ok);
            bl_group_free(g);
        }
    }

    #[test]
    fn table_text_construction() {
        unsafe {
            let built = branchlaw::matgroup::builtin("cyclic4").unwrap();
            let table = branchlaw::chartab::dixon_table(&built).unwrap();
            let text = CString::new(branchlaw::chartab::save_table(&table)).unwrap();
            let label = CString::new("c4").unwrap();
            let mut g: *mut BlGroup = ptr::null_mut();
            assert_eq!(
                bl_group_new_from_table_text(text.as_ptr(), label.as_ptr(), &mut g),
                BlStatus::Ok
            );
            let mut order = 0u64;
            assert_eq!(bl_group_order(g, &mut order), BlStatus::Ok);
            assert_eq!(order, 4);
            bl_group_free(g);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        unsafe {
            // null arguments
            assert_eq!(
                bl_group_new(ptr::null(), ptr::null_mut()),
                BlStatus::NullArgument
            );

            // nonexistent input resolves to a file path and fails on read
            let source = CString::new("/nonexistent/nowhere.grp").unwrap();
            let mut g: *mut BlGroup = ptr::null_mut();
            assert_eq!(bl_group_new(source.as_ptr(), &mut g), BlStatus::Io);
            let msg = CStr::from_ptr(bl_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());

            // invalid UTF-8
            let bad = [0xffu8, 0xfe, 0x00];
            assert_eq!(
                bl_group_new(bad.as_ptr() as *const c_char, &mut g),
                BlStatus::InvalidUtf8
            );

            // truncated table text
            let text = CString::new("2\n1 1\n").unwrap();
            assert_eq!(
                bl_group_new_from_table_text(text.as_ptr(), ptr::null(), &mut g),
                BlStatus::Parse
            );

            // null handles
            let mut order = 0u64;
            assert_eq!(bl_group_order(ptr::null(), &mut order), BlStatus::NullArgument);
            bl_group_free(ptr::null_mut());
            bl_series_free(ptr::null_mut());
            bl_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn version_is_static() {
        let v = unsafe { CStr::from_ptr(bl_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
