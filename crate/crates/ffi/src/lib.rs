//! C interface to `cellkit`.
//!
//! Every function returns a [`CellkitStatus`]; results come back through
//! out-pointers. Strings returned by the library are NUL-terminated UTF-8
//! owned by the caller and must be released with [`cellkit_string_free`].
//! After a failure, [`cellkit_last_error`] describes it on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cellkit::based::{cell_quotient_ring, classify_spectral_graphs};
use cellkit::cells::{cell_report, compute_cells, CellDecomposition, ReportFormat};
use cellkit::coxeter::CoxeterSystem;
use cellkit::hecke::{HeckeProducts, KLTable};
use cellkit::Error;
use serde::Serialize;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellkitStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidSpec = 3,
    TooLarge = 4,
    UnknownElement = 5,
    UnknownCell = 6,
    InvalidArgument = 7,
    NotClosed = 8,
    InvalidRing = 9,
    Internal = 10,
}

/// Output format for reports.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellkitFormat {
    Markdown = 0,
    Json = 1,
    Csv = 2,
}

/// A finite Coxeter group with its KL table and cells. Opaque.
pub struct CellkitGroup {
    sys: CoxeterSystem,
    table: KLTable,
    cells: CellDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CellkitStatus {
    match e {
        Error::InvalidSpec(..) => CellkitStatus::InvalidSpec,
        Error::GroupTooLarge { .. } | Error::SizePolicy { .. } => CellkitStatus::TooLarge,
        Error::UnknownElement(_) => CellkitStatus::UnknownElement,
        Error::UnknownCell(_) => CellkitStatus::UnknownCell,
        Error::UnsupportedFormat(_) => CellkitStatus::InvalidArgument,
        Error::NotClosed(_) => CellkitStatus::NotClosed,
        Error::InvalidRing(_) => CellkitStatus::InvalidRing,
        _ => CellkitStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (CellkitStatus, String)>) -> CellkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CellkitStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CellkitStatus::Internal
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (CellkitStatus, String)>;
}

impl<T> IntoFfi<T> for cellkit::Result<T> {
    fn ffi(self) -> Result<T, (CellkitStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

unsafe fn input<'a>(s: *const c_char, what: &str) -> Result<&'a str, (CellkitStatus, String)> {
    if s.is_null() {
        return Err((CellkitStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (CellkitStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn group<'a>(g: *const CellkitGroup) -> Result<&'a CellkitGroup, (CellkitStatus, String)> {
    g.as_ref()
        .ok_or_else(|| (CellkitStatus::NullArgument, "group handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (CellkitStatus, String)> {
    if out.is_null() {
        return Err((CellkitStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CellkitStatus, String)> {
    let c = CString::new(s).map_err(|_| (CellkitStatus::Internal, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, (CellkitStatus, String)> {
    serde_json::to_string_pretty(v).map_err(|e| (CellkitStatus::Internal, e.to_string()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cellkit_status_string(status: CellkitStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CellkitStatus::Ok => c"ok",
        CellkitStatus::NullArgument => c"null argument",
        CellkitStatus::InvalidUtf8 => c"invalid UTF-8",
        CellkitStatus::InvalidSpec => c"invalid Coxeter type",
        CellkitStatus::TooLarge => c"group too large",
        CellkitStatus::UnknownElement => c"unknown element label",
        CellkitStatus::UnknownCell => c"unknown cell",
        CellkitStatus::InvalidArgument => c"invalid argument",
        CellkitStatus::NotClosed => c"H-cell not closed under the quotient product",
        CellkitStatus::InvalidRing => c"invalid based ring",
        CellkitStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cellkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cellkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the group named by `spec` (for example `B3` or `I2(7)`), its KL
/// table and its cells.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_new(spec: *const c_char, out: *mut *mut CellkitGroup) -> CellkitStatus {
    guard(|| {
        let spec = input(spec, "spec")?;
        let spec = spec.parse().ffi()?;
        let sys = CoxeterSystem::build(spec).ffi()?;
        let table = KLTable::build(&sys).ffi()?;
        let cells = compute_cells(HeckeProducts::new(&sys, &table));
        write_out(out, Box::into_raw(Box::new(CellkitGroup { sys, table, cells })))
    })
}

/// Releases a group. Null is ignored.
///
/// # Safety
/// `g` must come from [`cellkit_group_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_free(g: *mut CellkitGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of elements.
///
/// # Safety
/// `g` must be a live group; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_order(g: *const CellkitGroup, out: *mut usize) -> CellkitStatus {
    guard(|| write_out(out, group(g)?.sys.order()))
}

/// Number of two-sided cells.
///
/// # Safety
/// `g` must be a live group; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_two_sided_cell_count(g: *const CellkitGroup, out: *mut usize) -> CellkitStatus {
    guard(|| write_out(out, group(g)?.cells.two_sided_cells().len()))
}

/// Lusztig's a-function at the element with the given label.
///
/// # Safety
/// `g` must be a live group, `label` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_a_value(
    g: *const CellkitGroup,
    label: *const c_char,
    out: *mut u32,
) -> CellkitStatus {
    guard(|| {
        let g = group(g)?;
        let x = g.sys.parse_label(input(label, "label")?).ffi()?;
        write_out(out, g.cells.a_function(x))
    })
}

/// Left, right and two-sided cell ids of an element.
///
/// # Safety
/// `g` must be a live group, `label` a NUL-terminated string and the
/// three output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_cell_of(
    g: *const CellkitGroup,
    label: *const c_char,
    left: *mut usize,
    right: *mut usize,
    two_sided: *mut usize,
) -> CellkitStatus {
    guard(|| {
        let g = group(g)?;
        let x = g.sys.parse_label(input(label, "label")?).ffi()?;
        let (l, r, j) = g.cells.cell_of(x);
        if left.is_null() || right.is_null() || two_sided.is_null() {
            return Err((CellkitStatus::NullArgument, "output pointer is null".into()));
        }
        left.write(l);
        right.write(r);
        two_sided.write(j);
        Ok(())
    })
}

/// The KL polynomial `P_{x,y}` as text in `q`, for example `1+q`.
///
/// # Safety
/// `g` must be a live group, `x` and `y` NUL-terminated strings and `out`
/// writable. Free the result with [`cellkit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_kl(
    g: *const CellkitGroup,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> CellkitStatus {
    guard(|| {
        let g = group(g)?;
        let x = g.sys.parse_label(input(x, "x")?).ffi()?;
        let y = g.sys.parse_label(input(y, "y")?).ffi()?;
        write_string(out, g.table.kl(x, y).to_string())
    })
}

/// The cell report in the chosen format.
///
/// # Safety
/// `g` must be a live group and `out` writable. Free the result with
/// [`cellkit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_cell_report(
    g: *const CellkitGroup,
    format: CellkitFormat,
    out: *mut *mut c_char,
) -> CellkitStatus {
    guard(|| {
        let g = group(g)?;
        let format = match format {
            CellkitFormat::Markdown => ReportFormat::Markdown,
            CellkitFormat::Json => ReportFormat::Json,
            CellkitFormat::Csv => ReportFormat::Csv,
        };
        write_string(out, cell_report(&g.sys, &g.cells, format).ffi()?)
    })
}

/// JSON of the based ring on the H-cell in the left cell of `label`.
///
/// # Safety
/// `g` must be a live group, `label` a NUL-terminated string and `out`
/// writable. Free the result with [`cellkit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cellkit_group_hcell_ring_json(
    g: *const CellkitGroup,
    label: *const c_char,
    out: *mut *mut c_char,
) -> CellkitStatus {
    guard(|| {
        let g = group(g)?;
        let x = g.sys.parse_label(input(label, "label")?).ffi()?;
        let hecke = HeckeProducts::new(&g.sys, &g.table);
        let ring = cell_quotient_ring(hecke, &g.cells, g.cells.cell_of(x).0).ffi()?;
        write_string(out, to_json(&ring)?)
    })
}

/// JSON list of connected graphs on at most `max_vertices` vertices with
/// spectral radius `2cos(pi/n)`, with certificates and bicolourings.
///
/// # Safety
/// `out` must be writable. Free the result with [`cellkit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cellkit_spectral_graphs_json(
    n: u32,
    max_vertices: usize,
    out: *mut *mut c_char,
) -> CellkitStatus {
    guard(|| {
        if n < 3 || max_vertices == 0 || max_vertices > 62 {
            return Err((
                CellkitStatus::InvalidArgument,
                "need n >= 3 and 1 <= max_vertices <= 62".into(),
            ));
        }
        write_string(out, to_json(&classify_spectral_graphs(n, max_vertices))?)
    })
}
