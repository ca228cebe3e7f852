#pragma once

// Command-line front end. Exit codes: 0 success / PASS, 1 verification
// failure (witness printed), 2 usage, parse, cap or overflow errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <eqmat/eqmat.hpp>

namespace eqmat::cli {

inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MatrixFile load_matrix(const std::string& path) { return read_matrix(slurp(path)); }

// Inline value or file contents; both given is refused at parse time.
inline IntVector vector_arg(const std::string& inline_value, const std::string& file) {
  return parse_vector(file.empty() ? inline_value : slurp(file));
}

inline std::string join(const std::vector<std::size_t>& v, std::size_t offset = 1) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i] + offset);
  return s;
}

inline std::vector<int> to_bits(const IntVector& v) {
  std::vector<int> bits;
  for (i128 b : v) {
    if (b != 0 && b != 1) throw PreconditionError("input must be binary");
    bits.push_back(static_cast<int>(b));
  }
  return bits;
}

inline std::string fmt_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace detail

/* Runs one command line (args excludes the program name). */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constant-weight EQ/RMDS matrices and depth-2 threshold circuits", "eqmat"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Limits limits;
  std::string out_path;
  app.add_option("--cap", limits.cap, "Enumeration cap in elementary steps")->capture_default_str();
  app.add_option("--threads", limits.threads, "Verifier threads (output is independent of this)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--out", out_path, "Write results to a file instead of stdout");

  std::ostringstream buf;
  int status = kOk;
  std::function<void()> action;

  // construct
  auto* construct = app.add_subcommand("construct", "Build a matrix")->require_subcommand(1);
  int k = 0, q = 2, n = 0;
  std::string base_path;
  auto base_matrix = [&] { return base_path.empty() ? IntMatrix::identity(1) : detail::load_matrix(base_path).matrix; };

  auto* c_eq = construct->add_subcommand("eq", "Sylvester-type EQ matrix");
  c_eq->add_option("--k", k, "Iterations")->required()->check(CLI::NonNegativeNumber);
  c_eq->add_option("--base", base_path, "Base matrix file (default [1])")->check(CLI::ExistingFile);
  c_eq->callback([&] {
    action = [&] {
      auto c = construct_eq(base_matrix(), k);
      buf << write_matrix(c.matrix, c.trace);
    };
  });

  auto* c_eqq = construct->add_subcommand("eqq", "q-ary Sylvester-type EQ_q matrix");
  c_eqq->add_option("--q", q, "Arity")->required()->check(CLI::Range(2, 1 << 20));
  c_eqq->add_option("--k", k, "Iterations")->required()->check(CLI::NonNegativeNumber);
  c_eqq->add_option("--base", base_path, "Base matrix file (default [1])")->check(CLI::ExistingFile);
  c_eqq->callback([&] {
    action = [&] {
      auto c = construct_eq_q(base_matrix(), k, q);
      buf << write_matrix(c.matrix, c.trace);
    };
  });

  std::vector<std::int64_t> primes;
  int prime_count = 0;
  auto* c_crt = construct->add_subcommand("crt", "CRT matrix, rows 2^(j-1) mod p_i");
  c_crt->add_option("--n", n, "Bit width")->required();
  auto* primes_opt = c_crt->add_option("--primes", primes, "Ascending primes (default: greedy from 3)");
  c_crt->add_option("--count", prime_count, "Use the first COUNT primes from 3")->excludes(primes_opt);
  c_crt->callback([&] {
    action = [&] {
      auto ps = !primes.empty() ? primes
                                : choose_primes(n, prime_count > 0 ? std::optional<int>(prime_count) : std::nullopt);
      buf << write_matrix(build_crt(n, ps));
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Check a matrix property exhaustively")->require_subcommand(1);
  std::string file, mode = "kernel";
  std::size_t m = 0;

  auto* v_eq = verify->add_subcommand("eq", "EQ_q property");
  v_eq->add_option("--q", q, "Arity")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  v_eq->add_option("--mode", mode, "kernel|injectivity")->check(CLI::IsMember({"kernel", "injectivity"}));
  v_eq->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  v_eq->callback([&] {
    action = [&] {
      auto v = is_eq_q(detail::load_matrix(file).matrix, q, mode == "kernel" ? EqMode::Kernel : EqMode::Injectivity,
                       limits);
      if (v.passed()) {
        buf << "PASS\n";
      } else {
        buf << "FAIL kernel x=" << format_vector(v.counterexample->x) << "\n";
        status = kFail;
      }
    };
  });

  auto* v_mds = verify->add_subcommand("mds", "MDS property (every maximal square minor nonsingular)");
  v_mds->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  v_mds->callback([&] {
    action = [&] {
      auto v = is_mds(detail::load_matrix(file).matrix, limits);
      if (v.passed()) {
        buf << "PASS\n";
      } else {
        buf << "FAIL mds columns=" << detail::join(*v.singular_columns) << " det=0\n";
        status = kFail;
      }
    };
  });

  auto* v_rmds = verify->add_subcommand("rmds", "RMDS_q property (every m-row submatrix EQ_q)");
  v_rmds->add_option("--m", m, "EQ row count")->required()->check(CLI::PositiveNumber);
  v_rmds->add_option("--q", q, "Arity")->required()->check(CLI::Range(2, 1 << 20));
  v_rmds->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  v_rmds->callback([&] {
    action = [&] {
      auto v = is_rmds(detail::load_matrix(file).matrix, m, q, limits);
      if (v.passed()) {
        buf << "PASS\n";
      } else {
        buf << "FAIL rows=" << detail::join(*v.failing_rows) << "\n";
        buf << "FAIL kernel x=" << format_vector(v.counterexample->x) << "\n";
        status = kFail;
      }
    };
  });

  std::string vec_inline, vec_file;
  auto* v_res = verify->add_subcommand("crt-residue", "Divisibility of (A x)_i by p_i when sum 2^(i-1) x_i = 0");
  v_res->add_option("--primes", primes, "Primes of the CRT matrix")->required();
  auto* res_x = v_res->add_option("--x", vec_inline, "Vector, space separated");
  v_res->add_option("--x-file", vec_file, "Vector file")->excludes(res_x)->check(CLI::ExistingFile);
  v_res->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  v_res->callback([&] {
    action = [&] {
      auto x = detail::vector_arg(vec_inline, vec_file);
      auto r = crt_residue_check(primes, detail::load_matrix(file).matrix, x);
      buf << "image " << format_vector(r.image) << "\n";
      if (r.passed()) {
        buf << "PASS\n";
      } else {
        buf << "FAIL row=" << *r.failing_row + 1 << "\n";
        status = kFail;
      }
    };
  });

  // bounds
  std::int64_t bn = 0, bm = 0, bw = 1, alphabet = 0, k_iter = 0;
  auto* bounds = app.add_subcommand("bounds", "Rate and weight bounds");
  bounds->add_option("--n", bn, "Columns")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--m", bm, "Rows")->required()->check(CLI::PositiveNumber);
  bounds->add_option("--w", bw, "Weight bound W")->required()->check(CLI::NonNegativeNumber);
  bounds->add_option("--alphabet-size", alphabet, "Alphabet size k (default 2W+1)");
  bounds->add_option("--k-iter", k_iter, "Construction iteration")->check(CLI::NonNegativeNumber);
  bounds->callback([&] {
    action = [&] {
      auto r = bounds_report(bn, bm, static_cast<double>(bw), alphabet > 0 ? alphabet : 2 * bw + 1, k_iter);
      buf << "siegel_norm_bound " << (r.siegel_norm_bound ? detail::fmt_double(*r.siegel_norm_bound) : "absent") << "\n";
      buf << "ternary_rate_bound " << detail::fmt_double(r.ternary_rate_bound) << "\n";
      buf << "mds_alphabet_bound " << to_string(r.mds_alphabet_bound) << "\n";
      buf << "r_constr " << r.r_constr.num << "/" << r.r_constr.den << "\n";
      buf << "r_upper " << detail::fmt_double(r.r_upper) << "\n";
      buf << "ratio " << detail::fmt_double(r.ratio) << "\n";
    };
  });

  // decode / encode
  auto* dec = app.add_subcommand("decode", "Binary preimage of z for a traced Sylvester-type matrix");
  dec->add_option("FILE", file, "Matrix file with trace line")->required()->check(CLI::ExistingFile);
  auto* dec_z = dec->add_option("--z", vec_inline, "Target vector, space separated");
  dec->add_option("--z-file", vec_file, "Target vector file")->excludes(dec_z)->check(CLI::ExistingFile);
  dec->callback([&] {
    action = [&] {
      auto mf = detail::load_matrix(file);
      if (!mf.trace) throw PreconditionError("matrix file has no trace line");
      if (!(construct_eq_q(static_cast<int>(mf.trace->k), static_cast<int>(mf.trace->q)).matrix == mf.matrix))
        throw PreconditionError("matrix does not match its trace");
      try {
        buf << format_vector(decode(*mf.trace, detail::vector_arg(vec_inline, vec_file))) << "\n";
      } catch (const NotInImage& e) {
        buf << "FAIL " << e.what() << "\n";
        status = kFail;
      }
    };
  });

  auto* enc = app.add_subcommand("encode", "A x for binary x");
  enc->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  auto* enc_x = enc->add_option("--x", vec_inline, "Binary vector, space separated");
  enc->add_option("--x-file", vec_file, "Binary vector file")->excludes(enc_x)->check(CLI::ExistingFile);
  enc->callback([&] {
    action = [&] {
      buf << format_vector(encode(detail::load_matrix(file).matrix, detail::vector_arg(vec_inline, vec_file))) << "\n";
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Randomised RMDS_q search")->require_subcommand(1);
  SearchParams sp;
  auto* s_rmds = search->add_subcommand("rmds", "Sample until an RMDS_q matrix is found");
  s_rmds->add_option("--n", sp.n, "Columns")->required()->check(CLI::PositiveNumber);
  s_rmds->add_option("--m", sp.m, "EQ row count")->required()->check(CLI::PositiveNumber);
  s_rmds->add_option("--r", sp.r, "MDS rate")->required()->check(CLI::PositiveNumber);
  s_rmds->add_option("--q", sp.q, "Arity")->required()->check(CLI::Range(2, 1 << 20));
  s_rmds->add_option("--w", sp.w, "Entry bound W")->required()->check(CLI::NonNegativeNumber);
  s_rmds->add_option("--seed", sp.seed, "Generator seed")->required();
  s_rmds->add_option("--max-attempts", sp.max_attempts, "Attempt budget")->capture_default_str();
  s_rmds->callback([&] {
    action = [&] {
      auto res = search_rmds(sp, limits);
      if (res.exhausted()) {
        buf << "EXHAUSTED attempts=" << res.attempts << "\n";
        status = kFail;
        return;
      }
      buf << "# search n=" << sp.n << " m=" << sp.m << " r=" << sp.r << " q=" << sp.q << " w=" << sp.w
          << " seed=" << sp.seed << " attempts=" << res.attempts << "\n";
      buf << write_matrix(*res.matrix);
    };
  });

  std::int64_t multiplier = 4;
  auto* s_params = search->add_subcommand("params", "Suggested m and W for given n, r");
  s_params->add_option("--n", sp.n, "Columns")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 30));
  s_params->add_option("--r", sp.r, "MDS rate")->required()->check(CLI::PositiveNumber);
  s_params->add_option("--q", sp.q, "Arity")->capture_default_str();
  s_params->add_option("--c", multiplier, "Multiplier in W = c r")->capture_default_str();
  s_params->callback([&] {
    action = [&] {
      auto p = suggest_params(sp.n, sp.r, sp.q, multiplier);
      buf << "m " << p.m << "\nw " << p.w << "\n";
    };
  });

  // circuit
  auto* circuit = app.add_subcommand("circuit", "Threshold circuits")->require_subcommand(1);
  bool unchecked = false, trace = false;
  std::string weights, values, ref = "eq";
  std::size_t cn = 0, cm = 0, cr = 0;

  auto* ce = circuit->add_subcommand("compile-eq", "Depth-2 EQUALITY circuit from an EQ matrix");
  ce->add_option("MATRIX", file)->required()->check(CLI::ExistingFile);
  ce->add_flag("--unchecked", unchecked, "Skip the EQ verification");
  ce->callback([&] {
    action = [&] {
      CompileOptions opt{!unchecked, limits};
      buf << write_circuit(compile_eq_circuit(detail::load_matrix(file).matrix, opt));
    };
  });

  auto* cc = circuit->add_subcommand("compile-comp", "Depth-2 COMPARISON circuit from an RMDS_3 matrix");
  cc->add_option("MATRIX", file)->required()->check(CLI::ExistingFile);
  cc->add_option("--n", cn, "Bits")->required()->check(CLI::PositiveNumber);
  cc->add_option("--m", cm, "EQ row count")->required()->check(CLI::PositiveNumber);
  cc->add_option("--r", cr, "MDS rate")->required()->check(CLI::PositiveNumber);
  cc->add_flag("--unchecked", unchecked, "Skip the RMDS_3 verification");
  cc->callback([&] {
    action = [&] {
      CompileOptions opt{!unchecked, limits};
      buf << write_circuit(compile_comp_circuit(detail::load_matrix(file).matrix, cn, cm, cr, opt));
    };
  });

  auto* cv = circuit->add_subcommand("compile-valueset", "Circuit for 1{w.x in S}");
  cv->add_option("--w", weights, "Weights, space separated")->required();
  cv->add_option("--s", values, "Accepted values, space separated")->required();
  cv->callback([&] {
    action = [&] {
      auto s = parse_vector(values);
      if (s.empty()) err << "warning: empty value set, emitting the constant-0 circuit\n";
      buf << write_circuit(compile_value_set(parse_vector(weights), s));
    };
  });

  auto* cx = circuit->add_subcommand("exactify", "Rewrite EXACT gates as LT pairs");
  cx->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  cx->callback([&] { action = [&] { buf << write_circuit(exactify_to_lt(read_circuit(detail::slurp(file)))); }; });

  auto* cev = circuit->add_subcommand("eval", "Evaluate on one assignment");
  cev->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  auto* in_opt = cev->add_option("--input", vec_inline, "Bits, space separated, in input order");
  cev->add_option("--input-file", vec_file, "Bit vector file")->excludes(in_opt)->check(CLI::ExistingFile);
  cev->add_flag("--trace", trace, "Dump every gate value");
  cev->callback([&] {
    action = [&] {
      auto c = read_circuit(detail::slurp(file));
      auto bits = detail::to_bits(detail::vector_arg(vec_inline, vec_file));
      auto r = eval_circuit(c, bits);
      if (trace) buf << format_trace(r);
      buf << "output " << to_string(r.output) << "\n";
    };
  });

  auto* cch = circuit->add_subcommand("check", "Exhaustive equivalence with a reference function");
  cch->add_option("FILE", file)->required()->check(CLI::ExistingFile);
  cch->add_option("--ref", ref, "eq|comp|parity|valueset")->required()->check(
      CLI::IsMember({"eq", "comp", "parity", "valueset"}));
  cch->add_option("--n", cn, "Operand bits (eq/comp) or inputs (parity)");
  cch->add_option("--w", weights, "valueset weights");
  cch->add_option("--s", values, "valueset accepted values");
  cch->callback([&] {
    action = [&] {
      auto c = read_circuit(detail::slurp(file));
      Reference reference = ref == "eq"       ? Reference::equality(cn)
                            : ref == "comp"   ? Reference::comparison(cn)
                            : ref == "parity" ? Reference::parity(cn)
                                              : Reference::value_set(parse_vector(weights), parse_vector(values));
      auto res = exhaustive_check(c, reference, limits);
      if (res.passed()) {
        buf << "PASS evaluations=" << res.evaluations << "\n";
      } else {
        std::string bits;
        for (int b : res.mismatch->assignment) bits += (bits.empty() ? "" : " ") + std::to_string(b);
        buf << "FAIL input=" << bits << " got=" << to_string(res.mismatch->circuit_output)
            << " expected=" << res.mismatch->expected << "\n";
        status = kFail;
      }
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return kUsage;
    }
    f << buf.str();
  }
  return status;
}

}  // namespace eqmat::cli
