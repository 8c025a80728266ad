use std::ffi::{CStr, CString};
use std::ptr;

use redistrict_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn owned(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    rd_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(rd_last_error())
        .to_str()
        .unwrap()
        .to_string()
}

const P4: &str = "4 3\n0 1\n1 2\n2 3\n";

#[test]
fn plan_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rd_graph_parse(c(P4).as_ptr(), &mut g), RdStatus::Ok);
        assert_eq!((rd_graph_vertex_count(g), rd_graph_edge_count(g)), (4, 3));
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            rd_map_parse(g, c("2\n0\n1 2 3\n").as_ptr(), &mut a),
            RdStatus::Ok
        );
        assert_eq!(
            rd_map_parse(g, c("2\n0 1 2\n3\n").as_ptr(), &mut b),
            RdStatus::Ok
        );
        assert_eq!(rd_map_district_count(a), 2);
        assert_eq!(owned(rd_map_signature(a)), "{0|1,2,3}");
        let mut plan = ptr::null_mut();
        assert_eq!(rd_plan(g, a, b, &mut plan), RdStatus::Ok);
        assert_eq!(rd_plan_verify(g, a, plan, b), RdStatus::Ok);
        assert_eq!(rd_plan_verify(g, a, plan, a), RdStatus::WrongEnd);
        let text = owned(rd_plan_to_text(plan));
        let mut again = ptr::null_mut();
        assert_eq!(rd_plan_parse(c(&text).as_ptr(), &mut again), RdStatus::Ok);
        assert_eq!(rd_plan_len(again), rd_plan_len(plan));
        for i in 0..rd_plan_len(plan) {
            let (mut u, mut v, mut w) = (0, 0, 0);
            assert_eq!(rd_plan_step(plan, i, &mut u, &mut v, &mut w), RdStatus::Ok);
            assert_eq!(rd_map_apply(g, a, u, v, w), RdStatus::Ok);
        }
        assert_eq!(owned(rd_map_signature(a)), owned(rd_map_signature(b)));
        let (mut u, mut v, mut w) = (0, 0, 0);
        assert_eq!(
            rd_plan_step(plan, 99, &mut u, &mut v, &mut w),
            RdStatus::IndexOutOfRange
        );
        rd_plan_free(again);
        rd_plan_free(plan);
        rd_map_free(a);
        rd_map_free(b);
        rd_graph_free(g);
    }
}

#[test]
fn errors_carry_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            rd_graph_parse(c("2 1\n0 5\n").as_ptr(), &mut g),
            RdStatus::InvalidEdge
        );
        assert!(!last_error().is_empty());
        assert_eq!(rd_graph_parse(ptr::null(), &mut g), RdStatus::NullPointer);
        assert_eq!(rd_graph_parse(c(P4).as_ptr(), &mut g), RdStatus::Ok);
        assert!(last_error().is_empty());
        let mut p = ptr::null_mut();
        assert_eq!(
            rd_map_parse(g, c("2\n0 2\n1 3\n").as_ptr(), &mut p),
            RdStatus::InvalidMap
        );
        assert_eq!(
            rd_map_parse(g, c("2\n0 1\n2 3\n").as_ptr(), &mut p),
            RdStatus::Ok
        );
        assert_eq!(rd_map_apply(g, p, 0, 1, 3), RdStatus::InvalidSwitch);
        let mut d = 0;
        assert_eq!(rd_map_district_of(p, 9, &mut d), RdStatus::IndexOutOfRange);
        assert_eq!(rd_map_district_of(p, 3, &mut d), RdStatus::Ok);
        assert_eq!(d, 1);
        let mut m = 0;
        assert_eq!(rd_compute_m(g, &mut m), RdStatus::Ok);
        assert_eq!(m, 4);
        let mut conn = false;
        assert_eq!(rd_switch_graph_connected(g, 2, &mut conn), RdStatus::Ok);
        assert!(conn);
        assert_eq!(
            rd_switch_graph_connected(g, 9, &mut conn),
            RdStatus::KOutOfRange
        );
        let mut plan = ptr::null_mut();
        assert_eq!(rd_contract(g, p, 0, 0, &mut plan), RdStatus::Ok);
        assert_eq!(rd_plan_len(plan), 1);
        rd_plan_free(plan);
        rd_map_free(p);
        rd_graph_free(g);
        rd_graph_free(ptr::null_mut());
    }
}

#[test]
fn unreachable_pair() {
    unsafe {
        // triangle with two pendant paths; {1,2,3,4,5} holds both leaf blocks
        let mut g = ptr::null_mut();
        let src = "6 6\n0 1\n1 2\n0 2\n1 3\n2 4\n4 5\n";
        assert_eq!(rd_graph_parse(c(src).as_ptr(), &mut g), RdStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            rd_map_parse(g, c("2\n0\n1 2 3 4 5\n").as_ptr(), &mut a),
            RdStatus::Ok
        );
        assert_eq!(
            rd_map_parse(g, c("2\n0 1 2 3\n4 5\n").as_ptr(), &mut b),
            RdStatus::Ok
        );
        let mut plan = ptr::null_mut();
        assert_eq!(rd_plan(g, a, b, &mut plan), RdStatus::Unreachable);
        assert!(plan.is_null());
        rd_map_free(a);
        rd_map_free(b);
        rd_graph_free(g);
    }
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/redistrict.h"))
        .unwrap();
    for name in [
        "rd_graph_parse",
        "rd_plan",
        "rd_plan_verify",
        "RD_STATUS_UNREACHABLE",
        "typedef struct RdGraph RdGraph",
    ] {
        assert!(h.contains(name), "{name}");
    }
    let v = unsafe { CStr::from_ptr(rd_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let tmp = std::env::temp_dir().join(format!("redistrict_hdr_{}.c", std::process::id()));
    std::fs::write(
        &tmp,
        "#include \"redistrict.h\"\nint f(void) { RdGraph *g = 0; return rd_graph_parse(\"1 0\", &g) == RD_STATUS_OK; }\n",
    )
    .unwrap();
    let res = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(&tmp)
        .status();
    let _ = std::fs::remove_file(&tmp);
    match res {
        Ok(s) => assert!(s.success()),
        Err(_) => eprintln!("no C compiler; skipped"),
    }
}
