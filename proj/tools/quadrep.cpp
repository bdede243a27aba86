#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadrep/quadrep.hpp"

namespace {

using nlohmann::json;
using namespace quadrep;

json factorization_json(const arith::Factorization& f) {
  json out = json::array();
  for (const auto& [p, e] : f.pairs) out.push_back({p, e});
  return out;
}

json report_json(const count::CountReport& r, bool with_y) {
  json j;
  j["n"] = r.n;
  j["a"] = r.a;
  j["x_count"] = r.x_count;
  j["branch"] = count::to_string(r.branch);
  j["factorization"] = factorization_json(r.factorization);
  if (r.n_q) j["n_q"] = *r.n_q;
  if (r.tau_nq) j["tau_nq"] = *r.tau_nq;
  if (with_y) {
    if (!r.y_count)
      throw UnsupportedCoefficient(
          "y_count: undefined for a=27; its norms live in the a=3 ring");
    j["y_count"] = *r.y_count;
  }
  return j;
}

// CSV schema shared by count and table: n,a,x_count,branch,n_q,tau_nq.
// Absent fields stay empty; nothing needs escaping.
constexpr const char* kCsvHeader = "n,a,x_count,branch,n_q,tau_nq";

std::string csv_row(const count::CountReport& r) {
  std::string s = std::to_string(r.n);
  s += ',';
  s += std::to_string(r.a);
  s += ',';
  s += std::to_string(r.x_count);
  s += ',';
  s += count::to_string(r.branch);
  s += ',';
  if (r.n_q) s += std::to_string(*r.n_q);
  s += ',';
  if (r.tau_nq) s += std::to_string(*r.tau_nq);
  return s;
}

// Writes the accumulated stdout payload, or redirects it to --output.
void emit(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::fwrite(body.data(), 1, body.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::int64_t> parse_a_list(const std::string& text) {
  std::vector<std::int64_t> as;
  if (text == "all") {
    as.assign(rings::kSupportedCoefficients.begin(),
              rings::kSupportedCoefficients.end());
    return as;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    std::int64_t a = 0;
    try {
      a = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad coefficient list: " + text);
    }
    if (used != tok.size())
      throw std::invalid_argument("bad coefficient list: " + text);
    rings::form_params(a);  // throws UnsupportedCoefficient
    as.push_back(a);
  }
  if (as.empty()) throw std::invalid_argument("empty coefficient list");
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  return as;
}

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("QUADREP_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
    std::cerr << "warning: ignoring invalid QUADREP_WORKERS=" << env << "\n";
  }
  return 1;
}

struct Mismatch {
  std::int64_t a;
  std::int64_t n;
  std::int64_t formula;
  std::int64_t oracle;
};

// Sweeps n in [1, n_max] for every coefficient, comparing the closed form
// against the enumeration oracle. Chunks are contiguous n-ranges appended
// in order, so output is independent of the worker count.
int run_verify(const std::vector<std::int64_t>& as, std::int64_t n_max,
               int workers, std::string& out) {
  std::vector<Mismatch> mismatches;
  std::int64_t checked = 0;
  for (std::int64_t a : as) {
    const int k = static_cast<int>(
        std::min<std::int64_t>(workers, std::max<std::int64_t>(n_max, 1)));
    std::vector<std::vector<Mismatch>> found(k);
    const std::int64_t chunk = (n_max + k - 1) / k;
    std::vector<std::thread> pool;
    for (int w = 0; w < k; ++w) {
      pool.emplace_back([&, w, a] {
        const std::int64_t lo = 1 + w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n_max, lo + chunk - 1);
        for (std::int64_t n = lo; n <= hi; ++n) {
          const auto r = count::x_count(n, a);
          const auto oracle =
              static_cast<std::int64_t>(rings::enumerate_X(n, a).size());
          if (r.x_count != oracle) found[w].push_back({a, n, r.x_count, oracle});
        }
      });
    }
    for (auto& t : pool) t.join();
    checked += n_max;
    for (const auto& part : found)
      mismatches.insert(mismatches.end(), part.begin(), part.end());
  }
  for (const auto& m : mismatches) {
    json j;
    j["a"] = m.a;
    j["n"] = m.n;
    j["formula"] = m.formula;
    j["oracle"] = m.oracle;
    out += j.dump();
    out += '\n';
  }
  json summary;
  summary["a"] = as;
  summary["checked"] = checked;
  summary["mismatches"] = static_cast<std::int64_t>(mismatches.size());
  summary["n_max"] = n_max;
  out += summary.dump();
  out += '\n';
  return mismatches.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact representation counts for the forms x^2 + a*y^2"};
  app.require_subcommand(1);

  std::int64_t n = 0;
  std::int64_t a = 0;
  std::int64_t p = 0;
  std::int64_t n_max = 0;
  std::string a_arg = "all";
  std::string format = "json";
  std::string output_path;
  bool with_y = false;
  int workers_flag = 0;

  const auto format_check = CLI::IsMember({"csv", "json"});

  auto* cmd_count = app.add_subcommand("count", "closed-form |X(n,a)|");
  cmd_count->add_option("--n", n, "value to represent")->required();
  cmd_count->add_option("--a", a, "form coefficient")->required();
  cmd_count->add_flag("--with-y", with_y, "also report the ring-norm count");
  cmd_count->add_option("--format", format)->check(format_check);
  cmd_count->add_option("--output", output_path, "write to file instead of stdout");

  auto* cmd_solve = app.add_subcommand("solve", "enumerate all (x, y) pairs");
  cmd_solve->add_option("--n", n, "value to represent")->required();
  cmd_solve->add_option("--a", a, "form coefficient")->required();
  cmd_solve->add_option("--format", format)->check(format_check);
  cmd_solve->add_option("--output", output_path, "write to file instead of stdout");

  auto* cmd_verify =
      app.add_subcommand("verify", "sweep formula vs oracle over a range");
  cmd_verify->add_option("--a", a_arg, "coefficient, comma list, or 'all'");
  cmd_verify->add_option("--n-max", n_max, "upper end of the sweep")->required();
  cmd_verify->add_option("--workers", workers_flag, "worker thread count")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--output", output_path, "write to file instead of stdout");

  auto* cmd_table = app.add_subcommand("table", "emit rows for n = 1..n-max");
  cmd_table->add_option("--a", a, "form coefficient")->required();
  cmd_table->add_option("--n-max", n_max, "last row")->required();
  cmd_table->add_option("--format", format)->check(format_check);
  cmd_table->add_option("--output", output_path, "write to file instead of stdout");

  auto* cmd_classify = app.add_subcommand("classify", "classify a prime");
  cmd_classify->add_option("--p", p, "prime to classify")->required();
  cmd_classify->add_option("--a", a, "form coefficient")->required();
  cmd_classify->add_option("--output", output_path, "write to file instead of stdout");

  auto* cmd_factor = app.add_subcommand("factor", "factor an integer");
  cmd_factor->add_option("--n", n, "value to factor")->required();
  cmd_factor->add_option("--output", output_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string out;
    int rc = 0;
    if (cmd_count->parsed()) {
      const auto r = count::x_count(n, a);
      if (format == "csv") {
        out += kCsvHeader;
        out += '\n';
        out += csv_row(r);
        out += '\n';
        if (with_y) report_json(r, true);  // a = 27 must still be rejected
      } else {
        out += report_json(r, with_y).dump();
        out += '\n';
      }
    } else if (cmd_solve->parsed()) {
      const auto solutions = rings::enumerate_X(n, a);
      if (format == "csv") {
        out += "x,y\n";
        for (const auto& s : solutions) {
          out += std::to_string(s.x);
          out += ',';
          out += std::to_string(s.y);
          out += '\n';
        }
      } else {
        json j;
        j["n"] = n;
        j["a"] = a;
        j["count"] = static_cast<std::int64_t>(solutions.size());
        json list = json::array();
        for (const auto& s : solutions) list.push_back({s.x, s.y});
        j["solutions"] = list;
        out += j.dump();
        out += '\n';
      }
    } else if (cmd_verify->parsed()) {
      if (n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
      const auto as = parse_a_list(a_arg);
      const int workers = resolve_workers(workers_flag);
      const auto t0 = std::chrono::steady_clock::now();
      rc = run_verify(as, n_max, workers, out);
      const auto t1 = std::chrono::steady_clock::now();
      std::cerr << "wall time: "
                << std::chrono::duration_cast<std::chrono::milliseconds>(t1 -
                                                                         t0)
                       .count()
                << " ms\n";
    } else if (cmd_table->parsed()) {
      if (n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
      rings::form_params(a);
      if (format == "csv") {
        out += kCsvHeader;
        out += '\n';
        for (std::int64_t i = 1; i <= n_max; ++i) {
          out += csv_row(count::x_count(i, a));
          out += '\n';
        }
      } else {
        json rows = json::array();
        for (std::int64_t i = 1; i <= n_max; ++i)
          rows.push_back(report_json(count::x_count(i, a), false));
        out += rows.dump();
        out += '\n';
      }
    } else if (cmd_classify->parsed()) {
      if (p < 2 || !arith::is_prime(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("--p must be prime");
      json j;
      j["p"] = p;
      j["a"] = a;
      j["class"] = classify::to_string(classify::prime_class(p, a));
      if (a == 27 && p % 3 == 1)
        j["cubic_residue_two"] = classify::is_cubic_residue_two(p);
      out += j.dump();
      out += '\n';
    } else if (cmd_factor->parsed()) {
      const auto f = arith::factorize(n);
      json j;
      j["n"] = n;
      j["factors"] = factorization_json(f);
      out += j.dump();
      out += '\n';
    }
    emit(out, output_path);
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
