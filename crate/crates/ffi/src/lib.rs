//! C ABI over `qhecke`.
//!
//! Conventions:
//! * every fallible call returns a [`QhStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure;
//! * after a failure, [`qh_last_error`] describes it (per thread);
//! * handles are opaque and owned by the caller, released with the matching
//!   `*_free`; strings handed to C are released with [`qh_string_free`];
//! * panics never unwind into C: they surface as [`QhStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qhecke::centralizer::commutant_basis;
use qhecke::coeff::{parse_rational, Rational};
use qhecke::glq::tq_dimension;
use qhecke::hecke::x_lambda;
use qhecke::qperm::{half_qpartition_dim, qpartition_dim};
use qhecke::symcomb::{bell, stirling2};
use qhecke::tensor::{act_gen, MultiIndex, TensorVector};
use qhecke::{Composition, Error, HeckeElement, Permutation};

/// Result codes: zero is success, anything else a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument is out of range or malformed.
    InvalidArgument = 2,
    /// The requested tensor space exceeds the size limit.
    LimitExceeded = 3,
    /// Operands live in Hecke algebras of different rank.
    RankMismatch = 4,
    /// A string argument failed to parse.
    Parse = 5,
    /// The value does not fit the output type.
    Overflow = 6,
    /// An internal invariant failed; the library state is still usable.
    Panic = 7,
}

/// An element of the Hecke algebra `H_n` over `Q[q, q^-1]`.
pub struct QhHeckeElement(HeckeElement);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("NULs were replaced"));
}

struct Failure(QhStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DimensionLimitExceeded { .. } => QhStatus::LimitExceeded,
            Error::RankMismatch { .. } => QhStatus::RankMismatch,
            Error::Parse(_) => QhStatus::Parse,
            _ => QhStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: QhStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

/// Runs `body`, stores its value through `out` on success, and records the
/// error message otherwise.
fn guard<T>(out: *mut T, body: impl FnOnce() -> Result<T, Failure>) -> QhStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return QhStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is valid for writes.
            unsafe { out.write(v) };
            QhStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".into());
            set_error(msg);
            QhStatus::Panic
        }
    }
}

fn to_u64(v: u128) -> Result<u64, Failure> {
    u64::try_from(v).map_err(|_| Failure(QhStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

/// # Safety
/// `ptr` is null (only when `len == 0`) or valid for `len` reads.
unsafe fn slice<'a, T>(ptr: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return fail(QhStatus::NullPointer, "array pointer is null");
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// # Safety
/// `ptr` is null or a valid NUL-terminated string.
unsafe fn string<'a>(ptr: *const c_char) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return fail(QhStatus::NullPointer, "string pointer is null");
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| Failure(QhStatus::Parse, format!("string is not UTF-8: {e}")))
}

/// # Safety
/// `h` is null or a live handle from this library.
unsafe fn element<'a>(h: *const QhHeckeElement) -> Result<&'a HeckeElement, Failure> {
    h.as_ref()
        .map(|e| &e.0)
        .ok_or_else(|| Failure(QhStatus::NullPointer, "element handle is null".into()))
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(QhStatus::Panic, "output contains NUL".into()))
}

fn handle(e: HeckeElement) -> *mut QhHeckeElement {
    Box::into_raw(Box::new(QhHeckeElement(e)))
}

/// Message for the most recent failure on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Stirling number of the second kind `S(r, k)`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_stirling2(r: usize, k: usize, out: *mut u64) -> QhStatus {
    guard(out, || to_u64(stirling2(r, k)))
}

/// Bell number `B(m)`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_bell(m: usize, out: *mut u64) -> QhStatus {
    guard(out, || to_u64(bell(m)))
}

/// Dimension of the q-partition algebra `P_r(n)`, or of `P_{r+1/2}(n)` when
/// `half` is set.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_qpartition_dim(n: usize, r: usize, half: bool, out: *mut u64) -> QhStatus {
    guard(out, || {
        if n == 0 {
            return fail(QhStatus::InvalidArgument, "n must be positive");
        }
        to_u64(if half { half_qpartition_dim(n, r) } else { qpartition_dim(n, r) })
    })
}

/// Dimension of the commutant of `H_n` on `(C^n)^{⊗r}` at `q = q_num / q_den`,
/// by exact linear algebra. Refuses `n^r > limit`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_commutant_dim(
    n: usize,
    r: usize,
    q_num: i64,
    q_den: i64,
    limit: u64,
    out: *mut usize,
) -> QhStatus {
    guard(out, || {
        if q_den == 0 {
            return fail(QhStatus::InvalidArgument, "q denominator is zero");
        }
        let q = Rational::new(q_num.into(), q_den.into());
        let c = commutant_basis(n, r, &[q], limit.into())?;
        Ok(c.dims()[0])
    })
}

/// `T_w` for the permutation with one-line images `images[0..len]`.
///
/// # Safety
/// `images` is valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_t_w(images: *const usize, len: usize, out: *mut *mut QhHeckeElement) -> QhStatus {
    guard(out, || {
        let w = Permutation::new(slice(images, len)?.to_vec())?;
        Ok(handle(HeckeElement::t_w(&w)))
    })
}

/// The generator `T_i` of `H_n`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_generator(n: usize, i: usize, out: *mut *mut QhHeckeElement) -> QhStatus {
    guard(out, || Ok(handle(HeckeElement::generator(n, i)?)))
}

/// `x_λ = Σ_{w ∈ S_λ} T_w` for the composition `parts[0..len]`.
///
/// # Safety
/// `parts` is valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_x_lambda(parts: *const usize, len: usize, out: *mut *mut QhHeckeElement) -> QhStatus {
    guard(out, || {
        let parts = slice(parts, len)?;
        if parts.iter().sum::<usize>() == 0 {
            return fail(QhStatus::InvalidArgument, "composition of zero");
        }
        Ok(handle(x_lambda(&Composition::new(parts.to_vec()))))
    })
}

/// `a * b`.
///
/// # Safety
/// `a`, `b` are live handles and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_mul(
    a: *const QhHeckeElement,
    b: *const QhHeckeElement,
    out: *mut *mut QhHeckeElement,
) -> QhStatus {
    guard(out, || Ok(handle(element(a)?.mul(element(b)?)?)))
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` are live handles and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_add(
    a: *const QhHeckeElement,
    b: *const QhHeckeElement,
    out: *mut *mut QhHeckeElement,
) -> QhStatus {
    guard(out, || Ok(handle(element(a)?.add(element(b)?)?)))
}

/// Whether `a == b`.
///
/// # Safety
/// `a`, `b` are live handles and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_equal(a: *const QhHeckeElement, b: *const QhHeckeElement, out: *mut bool) -> QhStatus {
    guard(out, || Ok(element(a)? == element(b)?))
}

/// Number of `T_w` with a nonzero coefficient.
///
/// # Safety
/// `h` is a live handle and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_support_size(h: *const QhHeckeElement, out: *mut usize) -> QhStatus {
    guard(out, || Ok(element(h)?.support_size()))
}

/// JSON array of `{"perm": [...], "coeff": [[exp, num, den], ...]}` terms.
/// Free the string with `qh_string_free`.
///
/// # Safety
/// `h` is a live handle and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_to_json(h: *const QhHeckeElement, out: *mut *mut c_char) -> QhStatus {
    guard(out, || {
        let json = serde_json::to_string(element(h)?).map_err(|e| Failure(QhStatus::Panic, e.to_string()))?;
        owned_string(json)
    })
}

/// Inverse of `qh_hecke_to_json`; `n` fixes the rank of the zero element.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_from_json(n: usize, json: *const c_char, out: *mut *mut QhHeckeElement) -> QhStatus {
    guard(out, || Ok(handle(HeckeElement::from_json(n, string(json)?)?)))
}

/// Releases an element. Null is a no-op.
///
/// # Safety
/// `h` is null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qh_hecke_free(h: *mut QhHeckeElement) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `T_i e_j` for the multi-index `index` (e.g. `"1,2,1"`) in `(C^n)^{⊗r}`,
/// as a JSON array of `{"index": [...], "coeff": ...}` terms.
///
/// # Safety
/// `index` is a NUL-terminated string and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_tensor_act_gen(n: usize, i: usize, index: *const c_char, out: *mut *mut c_char) -> QhStatus {
    guard(out, || {
        let j = MultiIndex::parse(n, string(index)?)?;
        let v = act_gen(i, &TensorVector::basis(n, j)?)?;
        owned_string(serde_json::to_string(&v).map_err(|e| Failure(QhStatus::Panic, e.to_string()))?)
    })
}

/// `Σ_k S(r,k) [G : P_{(n-k,1^k)}]` as JSON `[[exp, num, den], ...]`.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_tq_dimension_json(n: usize, r: usize, out: *mut *mut c_char) -> QhStatus {
    guard(out, || {
        owned_string(serde_json::to_string(&tq_dimension(n, r)).map_err(|e| Failure(QhStatus::Panic, e.to_string()))?)
    })
}

/// Evaluates `tq_dimension(n, r)` at `q` given as a string such as `"7/5"`,
/// writing the decimal numerator and denominator as a string `"num/den"`.
///
/// # Safety
/// `q` is a NUL-terminated string and `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qh_tq_dimension_at(n: usize, r: usize, q: *const c_char, out: *mut *mut c_char) -> QhStatus {
    guard(out, || {
        let q0 = parse_rational(string(q)?)?;
        let v = tq_dimension(n, r).eval(&q0)?;
        owned_string(v.to_string())
    })
}
