use std::ffi::CStr;
use std::ptr;

use hwsg_ffi::*;

fn semigroup(gens: &[i64]) -> *mut HwsgSemigroup {
    let mut s = ptr::null_mut();
    let status = unsafe { hwsg_semigroup_new(gens.as_ptr(), gens.len(), &mut s) };
    assert_eq!(status, HwsgStatus::Ok);
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hwsg_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn invariants_of_a_symmetric_semigroup() {
    let s = semigroup(&[6, 15, 16, 25, 26]);
    let (mut f, mut g, mut sym) = (0i64, 0u64, false);
    unsafe {
        assert_eq!(hwsg_semigroup_frobenius(s, &mut f), HwsgStatus::Ok);
        assert_eq!(hwsg_semigroup_genus(s, &mut g), HwsgStatus::Ok);
        assert_eq!(hwsg_semigroup_is_symmetric(s, &mut sym), HwsgStatus::Ok);
        hwsg_semigroup_free(s);
    }
    assert_eq!((f, g, sym), (35, 18, true));
}

#[test]
fn buffers_report_required_length() {
    let s = semigroup(&[3, 5]);
    let mut buf = [0i64; 2];
    let mut len = 0;
    unsafe {
        assert_eq!(hwsg_semigroup_apery(s, 5, buf.as_mut_ptr(), buf.len(), &mut len), HwsgStatus::BufferTooSmall);
        assert_eq!(len, 5);
        let mut big = [0i64; 8];
        assert_eq!(hwsg_semigroup_apery(s, 5, big.as_mut_ptr(), big.len(), &mut len), HwsgStatus::Ok);
        assert_eq!(&big[..len], &[0, 3, 6, 9, 12]);
        assert_eq!(hwsg_semigroup_generators(s, buf.as_mut_ptr(), buf.len(), &mut len), HwsgStatus::Ok);
        assert_eq!(buf, [3, 5]);
        hwsg_semigroup_free(s);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut s = ptr::null_mut();
    let status = unsafe { hwsg_semigroup_new([2i64, 4].as_ptr(), 2, &mut s) };
    assert_eq!(status, HwsgStatus::NotCoprime);
    assert!(s.is_null());
    assert!(last_error().contains("gcd"));
    let status = unsafe { hwsg_semigroup_new(ptr::null(), 0, &mut s) };
    assert_eq!(status, HwsgStatus::EmptyGenerators);
    let mut f = 0;
    assert_eq!(unsafe { hwsg_semigroup_frobenius(ptr::null(), &mut f) }, HwsgStatus::NullPointer);

    let s = semigroup(&[3, 5]);
    let mut r = std::mem::MaybeUninit::<HwsgHwResult>::uninit();
    assert_eq!(unsafe { hwsg_two_generated(s, 3, r.as_mut_ptr()) }, HwsgStatus::NotAGap);
    unsafe { hwsg_semigroup_free(s) };
}

#[test]
fn ideals_and_checks() {
    let s = semigroup(&[3, 5]);
    let mut a = ptr::null_mut();
    let mut r = HwsgHwResult { verdict: HwsgVerdict::NotHw, has_witness: false, witness_element: 0, checked_partitions: 0 };
    unsafe {
        assert_eq!(hwsg_ideal_new(s, [0i64, 1].as_ptr(), 2, &mut a), HwsgStatus::Ok);
        assert_eq!(hwsg_ideal_check_hw(a, &mut r), HwsgStatus::Ok);
        assert_eq!(r.verdict, HwsgVerdict::Hw);
        assert!(r.has_witness);
        assert_eq!(r.witness_element, 9);

        let mut d = ptr::null_mut();
        assert_eq!(hwsg_ideal_dual(a, &mut d), HwsgStatus::Ok);
        let mut buf = [0i64; 4];
        let mut len = 0;
        assert_eq!(hwsg_ideal_generators(d, buf.as_mut_ptr(), 4, &mut len), HwsgStatus::Ok);
        assert_eq!(&buf[..len], &[5, 9]);

        let (mut found, mut x) = (false, 0);
        assert_eq!(hwsg_find_irreducible(s, 1, -1, &mut found, &mut x), HwsgStatus::Ok);
        assert!(found);
        assert_eq!(x, 8);

        let (mut free, mut ci) = (false, false);
        assert_eq!(hwsg_classify(s, &mut free, &mut ci), HwsgStatus::Ok);
        assert!(free && ci);

        let mut json = ptr::null_mut();
        assert_eq!(hwsg_semigroup_to_json(s, &mut json), HwsgStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hwsg_string_free(json);
        assert_eq!(text, r#"{"generators":[3,5],"frobenius":7,"genus":4,"symmetric":true}"#);

        hwsg_ideal_free(d);
        hwsg_ideal_free(a);
        hwsg_semigroup_free(s);
    }
}
