#include "ycoo/design_data.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ycoo {

namespace detail {
extern const std::string_view kEmbeddedDesignData;
}

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("design data: " + what);
}

std::vector<std::vector<double>> factors(const json& j) {
  std::vector<std::vector<double>> out;
  for (const auto& f : j) out.push_back(f.get<std::vector<double>>());
  return out;
}

ObserverSpec parse_observer(const json& j) {
  ObserverSpec o;
  o.name = j.at("name").get<std::string>();
  o.op.speed = j.at("speed").get<double>();
  o.op.heading = deg2rad(j.at("heading_deg").get<double>());
  o.op.steer = 0.0;
  const auto range = j.at("range_deg").get<std::vector<double>>();
  require(range.size() == 2, o.name + ": range_deg needs two values");
  o.range_lo_deg = range[0];
  o.range_hi_deg = range[1];

  const json& p = j.at("params");
  o.params.w1 = p.at("w1").get<double>();
  o.params.w2 = p.at("w2").get<double>();
  o.params.tau = p.at("tau").get<double>();
  const auto ro = p.at("rolloff").get<std::vector<int>>();
  require(ro.size() == 2, o.name + ": rolloff needs two orders");
  o.params.rolloff1 = ro[0];
  o.params.rolloff2 = ro[1];
  o.params.validate();

  o.reference = TransferMatrix(2, 2);
  for (const auto& e : j.at("entries")) {
    const auto r = e.at("out").get<std::size_t>();
    const auto c = e.at("in").get<std::size_t>();
    require(r < 2 && c < 2, o.name + ": entry index out of range");
    o.reference(r, c) = from_factors(e.at("gain").get<double>(), factors(e.at("zeros")), factors(e.at("poles")));
  }
  return o;
}

}  // namespace

RationalFunction from_factors(double gain, const std::vector<std::vector<double>>& zero_factors,
                              const std::vector<std::vector<double>>& pole_factors) {
  Polynomial num = Polynomial::constant(gain);
  for (const auto& f : zero_factors) num = num * Polynomial::from_descending(f);
  Polynomial den = Polynomial::constant(1.0);
  for (const auto& f : pole_factors) den = den * Polynomial::from_descending(f);
  return RationalFunction(num, den);
}

void DesignData::validate() const {
  require(!observers.empty(), "no observers");
  for (const auto& w : overlaps) {
    require(w.hi_deg > w.lo_deg, "overlap window is empty");
    require(w.observers[0] < observers.size() && w.observers[1] < observers.size(), "overlap observer index");
    require(w.grid_deg.size() >= 2, "overlap grid too short");
    for (std::size_t k = 1; k < w.grid_deg.size(); ++k)
      require(w.grid_deg[k] > w.grid_deg[k - 1], "overlap grid not strictly increasing");
    require(w.grid_deg.front() == w.lo_deg && w.grid_deg.back() == w.hi_deg, "overlap grid must span the window");
    for (const auto& col : w.rms) {
      require(col.size() == w.grid_deg.size(), "rms column length");
      for (double v : col) require(v > 0.0, "rms must be positive");
    }
  }
  for (const auto& r : luenberger) require(r.hi_deg > r.lo_deg, "luenberger region is empty");
}

DesignData parse_design_data(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("design data: ") + e.what());
  }
  DesignData d;
  try {
    require(j.at("format").get<std::string>() == "ycoo-design", "unknown format tag");
    d.version = j.at("version").get<int>();
    require(d.version == 1, "unsupported version");
    d.vehicle.lf = j.at("vehicle").at("lf").get<double>();
    d.vehicle.lr = j.at("vehicle").at("lr").get<double>();
    require(d.vehicle.lf > 0.0 && d.vehicle.lr > 0.0, "axle distances must be positive");
    const auto io_in = j.at("observer_io").at("inputs").get<std::vector<std::string>>();
    const auto io_out = j.at("observer_io").at("outputs").get<std::vector<std::string>>();
    require(io_in == std::vector<std::string>{"e_Y", "e_X"}, "observer inputs must be [e_Y, e_X]");
    require(io_out == std::vector<std::string>{"steer", "accel"}, "observer outputs must be [steer, accel]");

    for (const auto& o : j.at("observers")) d.observers.push_back(parse_observer(o));

    for (const auto& w : j.at("overlaps")) {
      OverlapWindow ow;
      const auto win = w.at("window_deg").get<std::vector<double>>();
      require(win.size() == 2, "window_deg needs two values");
      ow.lo_deg = win[0];
      ow.hi_deg = win[1];
      const auto obs = w.at("observers").get<std::vector<std::size_t>>();
      require(obs.size() == 2, "overlap names two observers");
      ow.observers = {obs[0], obs[1]};
      ow.grid_deg = w.at("grid_deg").get<std::vector<double>>();
      const auto& rms = w.at("rms_deg");
      require(rms.size() == 2, "overlap carries two rms columns");
      ow.rms = {rms[0].get<std::vector<double>>(), rms[1].get<std::vector<double>>()};
      d.overlaps.push_back(std::move(ow));
    }

    const json& lb = j.at("luenberger");
    require(lb.at("innovation").get<std::vector<std::string>>() == std::vector<std::string>{"X", "Y"},
            "luenberger innovation must be [X, Y]");
    for (const auto& r : lb.at("regions")) {
      LuenbergerRegion reg;
      const auto range = r.at("range_deg").get<std::vector<double>>();
      require(range.size() == 2, "region range needs two values");
      reg.lo_deg = range[0];
      reg.hi_deg = range[1];
      const auto g = r.at("gain").get<std::vector<std::vector<double>>>();
      require(g.size() == 4, "gain needs four rows");
      for (Eigen::Index i = 0; i < 4; ++i) {
        require(g[static_cast<std::size_t>(i)].size() == 2, "gain rows need two columns");
        reg.gain(i, 0) = g[static_cast<std::size_t>(i)][0];
        reg.gain(i, 1) = g[static_cast<std::size_t>(i)][1];
      }
      d.luenberger.push_back(reg);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("design data: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("design data: ") + e.what());
  }
  d.validate();
  return d;
}

DesignData load_design_data(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("design data: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_design_data(ss.str());
}

const DesignData& embedded_design_data() {
  static const DesignData d = parse_design_data(detail::kEmbeddedDesignData);
  return d;
}

std::vector<TransferMatrix> pipeline_observers(const DesignData& data) {
  std::vector<TransferMatrix> out;
  for (const auto& o : data.observers) out.push_back(design_observer(o.op, o.params, data.vehicle).observer);
  return out;
}

std::vector<SelfCheckResult> self_check(const DesignData& data, double tol) {
  std::vector<SelfCheckResult> out;
  const auto designed = pipeline_observers(data);
  for (std::size_t k = 0; k < data.observers.size(); ++k) {
    SelfCheckResult r;
    r.observer = data.observers[k].name;
    r.entries = compare_matrices(designed[k], data.observers[k].reference);
    for (const auto& e : r.entries) r.worst = std::max(r.worst, e.worst());
    r.pass = r.worst <= tol;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ycoo
