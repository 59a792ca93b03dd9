use latticetopo_core::bloch::{alpha_bar, h_vector, LatticeParams, Momentum};
use latticetopo_core::latsum2d::geometry;
use latticetopo_core::{Vec2, C64};

#[test]
fn probe_vf_alpha0() {
    let params = LatticeParams::honeycomb().unwrap();
    let abar = alpha_bar(&params);
    let k = geometry().k_point;
    let hk = h_vector(&params, Momentum::Two(k), abar).unwrap();
    println!("abar                = {:+.12e} {:+.12e}i", abar.re, abar.im);
    println!("h0(K)  (= alpha0)   = {:+.12e} {:+.12e}i", hk.h0.re, hk.h0.im);
    println!("h1(K)               = {:+.3e} {:+.3e}i", hk.h1.re, hk.h1.im);
    println!("h2(K)               = {:+.3e} {:+.3e}i", hk.h2.re, hk.h2.im);
    println!("h3(K)               = {:+.12e} {:+.12e}i", hk.h3.re, hk.h3.im);

    // Central differences of h1, h2 along Cartesian x and y at K.
    let h_at = |q: Vec2| h_vector(&params, Momentum::Two(k + q), abar).unwrap();
    for h in [1e-4f64, 5e-5] {
        let hx_p = h_at(Vec2::new(h, 0.0));
        let hx_m = h_at(Vec2::new(-h, 0.0));
        let hy_p = h_at(Vec2::new(0.0, h));
        let hy_m = h_at(Vec2::new(0.0, -h));
        let d = |p: C64, m: C64| (p - m) / (2.0 * h);
        let dh1dx = d(hx_p.h1, hx_m.h1);
        let dh1dy = d(hy_p.h1, hy_m.h1);
        let dh2dx = d(hx_p.h2, hx_m.h2);
        let dh2dy = d(hy_p.h2, hy_m.h2);
        println!("-- h = {h:.1e}");
        println!("dh1/dx = {:+.9e} {:+.9e}i", dh1dx.re, dh1dx.im);
        println!("dh1/dy = {:+.9e} {:+.9e}i", dh1dy.re, dh1dy.im);
        println!("dh2/dx = {:+.9e} {:+.9e}i", dh2dx.re, dh2dx.im);
        println!("dh2/dy = {:+.9e} {:+.9e}i", dh2dy.re, dh2dy.im);
        let vf = dh2dx;
        println!("v_F = dh2/dx        = {:+.9e} {:+.9e}i  |v_F| = {:.6e}", vf.re, vf.im, vf.norm());
        // Decay budget for the packet test: peak amplitude envelope over time
        // goes like exp((Im v_F)^2 tau^2 / x0^2 + Im(alpha0) tau); with
        // x0 = 0.5 it is non-increasing on [0, T] iff 8 (Im v_F)^2 T <= |Im a0|.
        let t = 20.0;
        let lhs = 8.0 * vf.im * vf.im * t;
        println!("8 (Im vF)^2 T = {:.3e}   |Im alpha0| = {:.3e}", lhs, hk.h0.im.abs());
    }
}
