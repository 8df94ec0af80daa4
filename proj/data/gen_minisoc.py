#!/usr/bin/env python3
"""One-off generator for minisoc.v (checked in next to this script)."""

import io

W = 8  # datapath width


def bits(prefix):
    return [f"{prefix}{i}" for i in range(W)]


def ports(out, groups):
    decls = []
    for direction, names in groups:
        decls += [f"{direction} {n}" for n in names]
    out.write(", ".join(decls))


def wires(out, names):
    for i in range(0, len(names), 8):
        out.write("  wire " + ", ".join(names[i : i + 8]) + ";\n")


def alu(out):
    out.write("module alu8(")
    ports(out, [("input", bits("a") + bits("b") + ["op0", "op1"]),
                ("output", bits("y"))])
    out.write(");\n")
    wires(out, bits("aw") + bits("ow") + bits("xw") + bits("mw"))
    for i in range(W):
        out.write(f"  AND2 and{i}(.A(a{i}), .B(b{i}), .Y(aw{i}));\n")
        out.write(f"  OR2  or{i}(.A(a{i}), .B(b{i}), .Y(ow{i}));\n")
        out.write(f"  XOR2 xor{i}(.A(a{i}), .B(b{i}), .Y(xw{i}));\n")
        out.write(f"  MUX2 m0_{i}(.A(aw{i}), .B(ow{i}), .S(op0), .Y(mw{i}));\n")
        out.write(f"  MUX2 m1_{i}(.A(mw{i}), .B(xw{i}), .S(op1), .Y(y{i}));\n")
    out.write("endmodule\n\n")


def regfile(out):
    out.write("module regfile8(")
    ports(out, [("input", bits("d") + ["wa", "we", "ra", "ck"]),
                ("output", bits("q"))])
    out.write(");\n")
    wires(out, ["wan", "en0", "en1"] + bits("r0d") + bits("r0q") +
          bits("r1d") + bits("r1q"))
    out.write("  NOT  nwa(.A(wa), .Y(wan));\n")
    out.write("  AND2 wen0(.A(we), .B(wan), .Y(en0));\n")
    out.write("  AND2 wen1(.A(we), .B(wa), .Y(en1));\n")
    for r in range(2):
        for i in range(W):
            out.write(f"  MUX2 sel{r}_{i}(.A(r{r}q{i}), .B(d{i}), "
                      f".S(en{r}), .Y(r{r}d{i}));\n")
            out.write(f"  DFF  ff{r}_{i}(.D(r{r}d{i}), .CK(ck), "
                      f".Q(r{r}q{i}));\n")
    for i in range(W):
        out.write(f"  MUX2 rd{i}(.A(r0q{i}), .B(r1q{i}), .S(ra), .Y(q{i}));\n")
    out.write("endmodule\n\n")


def memory(out):
    out.write("module mem8x4(")
    ports(out, [("input", bits("d") + ["a0", "a1", "we", "ck"]),
                ("output", bits("q"))])
    out.write(");\n")
    sel = ["na0", "na1", "s0", "s1", "s2", "s3", "en0", "en1", "en2", "en3"]
    word = [f"w{w}{kind}{i}" for w in range(4) for kind in ("d", "q")
            for i in range(W)]
    rd = [f"rl{i}" for i in range(W)] + [f"rh{i}" for i in range(W)]
    wires(out, sel + word + rd)
    out.write("  NOT  n_a0(.A(a0), .Y(na0));\n")
    out.write("  NOT  n_a1(.A(a1), .Y(na1));\n")
    out.write("  AND2 dec0(.A(na0), .B(na1), .Y(s0));\n")
    out.write("  AND2 dec1(.A(a0), .B(na1), .Y(s1));\n")
    out.write("  AND2 dec2(.A(na0), .B(a1), .Y(s2));\n")
    out.write("  AND2 dec3(.A(a0), .B(a1), .Y(s3));\n")
    for w in range(4):
        out.write(f"  AND2 wen{w}(.A(s{w}), .B(we), .Y(en{w}));\n")
    for w in range(4):
        for i in range(W):
            out.write(f"  MUX2 sel{w}_{i}(.A(w{w}q{i}), .B(d{i}), "
                      f".S(en{w}), .Y(w{w}d{i}));\n")
            out.write(f"  DFF  ff{w}_{i}(.D(w{w}d{i}), .CK(ck), "
                      f".Q(w{w}q{i}));\n")
    for i in range(W):
        out.write(f"  MUX2 rl_{i}(.A(w0q{i}), .B(w1q{i}), .S(a0), .Y(rl{i}));\n")
        out.write(f"  MUX2 rh_{i}(.A(w2q{i}), .B(w3q{i}), .S(a0), .Y(rh{i}));\n")
        out.write(f"  MUX2 rq_{i}(.A(rl{i}), .B(rh{i}), .S(a1), .Y(q{i}));\n")
    out.write("endmodule\n\n")


def bus(out):
    out.write("module bus8(")
    ports(out, [("input", bits("x") + bits("r") + bits("m") + ["s0", "s1"]),
                ("output", bits("o"))])
    out.write(");\n")
    wires(out, bits("b0w") + bits("b1w"))
    for i in range(W):
        out.write(f"  MUX2 st0_{i}(.A(x{i}), .B(r{i}), .S(s0), .Y(b0w{i}));\n")
        out.write(f"  MUX2 st1_{i}(.A(b0w{i}), .B(m{i}), .S(s1), .Y(b1w{i}));\n")
        out.write(f"  BUF  ob{i}(.A(b1w{i}), .Y(o{i}));\n")
    out.write("endmodule\n\n")


def top(out):
    pis = (bits("a") + bits("b") +
           ["op0", "op1", "wa", "we", "ra", "ma0", "ma1", "mwe",
            "bs0", "bs1", "rst", "ck"])
    out.write("module top(")
    ports(out, [("input", pis), ("output", bits("o"))])
    out.write(");\n")
    wires(out, bits("alu") + bits("rf") + bits("mem") + ["bs1s"])
    conn = ", ".join(f".a{i}(a{i})" for i in range(W)) + ", " + \
           ", ".join(f".b{i}(b{i})" for i in range(W))
    ys = ", ".join(f".y{i}(alu{i})" for i in range(W))
    out.write(f"  alu8 u_alu({conn}, .op0(op0), .op1(op1), {ys});\n")
    ds = ", ".join(f".d{i}(alu{i})" for i in range(W))
    qs = ", ".join(f".q{i}(rf{i})" for i in range(W))
    out.write(f"  regfile8 u_rf({ds}, .wa(wa), .we(we), .ra(ra), .ck(ck), "
              f"{qs});\n")
    qs = ", ".join(f".q{i}(mem{i})" for i in range(W))
    out.write(f"  mem8x4 u_mem({ds}, .a0(ma0), .a1(ma1), .we(mwe), .ck(ck), "
              f"{qs});\n")
    out.write("  DFFR sync0(.D(bs1), .CK(ck), .R(rst), .Q(bs1s));\n")
    xs = ", ".join(f".x{i}(alu{i})" for i in range(W))
    rs = ", ".join(f".r{i}(rf{i})" for i in range(W))
    ms = ", ".join(f".m{i}(mem{i})" for i in range(W))
    os_ = ", ".join(f".o{i}(o{i})" for i in range(W))
    out.write(f"  bus8 u_bus({xs}, {rs}, {ms}, .s0(bs0), .s1(bs1s), {os_});\n")
    out.write("endmodule\n")


def main():
    out = io.StringIO()
    out.write("// Generated by gen_minisoc.py -- do not edit by hand.\n")
    out.write("// 8-bit ALU, 2x8 register file, 4x8 DFF memory, output bus.\n\n")
    alu(out)
    regfile(out)
    memory(out)
    bus(out)
    top(out)
    with open("minisoc.v", "w") as f:
        f.write(out.getvalue())


if __name__ == "__main__":
    main()
