use ncopt_sdp::{presolve, PsdBlock, SdpModel, Sense};
use num_complex::Complex64;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() {
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let y = model.new_var();
    let mut b = PsdBlock::new("m", 2);
    b.push(0, 0, x, re(1.0));
    b.push(1, 1, y, re(1.0));
    b.push_constant(0, 1, re(0.5));
    model.add_block(b);
    let mut g = PsdBlock::new("g", 1);
    g.push(0, 0, x, re(1.0));
    g.push_constant(0, 0, re(-1.0));
    model.add_block(g);
    model.set_objective(vec![(x, 1.0), (y, 2.0)], 0.25);
    let red = presolve::reduce(&model).unwrap();
    let opts = ncopt_sdp::hsde::HsdeOptions { verbose: true, ..Default::default() };
    let res = ncopt_sdp::hsde::solve_lmi(&red.c, &red.blocks, &opts);
    eprintln!("status {:?} pobj {} iters {} pres {:.2e} dres {:.2e} gap {:.2e}", res.status, res.pobj, res.iters, res.pres, res.dres, res.relgap);
}
