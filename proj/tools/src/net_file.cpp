#include "ribnet_cli/net_file.hpp"

#include <cmath>
#include <fstream>

#include "ribnet/errors.hpp"

namespace ribnet::cli {
namespace {

std::string where(const Lattice& lat, std::size_t v) {
  std::string s = "(";
  const MultiIndex t = lat.multi_index(v);
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

ordered_json finite_array(std::span<const double> values) {
  ordered_json a = ordered_json::array();
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("non-finite value cannot be serialized");
    a.push_back(v);
  }
  return a;
}

std::vector<double> null_coefficients(const Multivector& v) {
  const NullBasisCoordinates c = null_basis_coordinates(v);
  std::vector<double> out{c.e0};
  for (Eigen::Index i = 0; i < c.euclidean.size(); ++i) out.push_back(c.euclidean(i));
  out.push_back(c.einf);
  return out;
}

Multivector from_null_coefficients(const Algebra& alg, const std::vector<double>& c,
                                   const std::string& where) {
  if (static_cast<int>(c.size()) != alg.n() + 2) {
    throw InputError(where + ": expected " + std::to_string(alg.n() + 2) + " coefficients");
  }
  return alg.vector(c.front(), std::span(c).subspan(1, static_cast<std::size_t>(alg.n())), c.back());
}

ordered_json point_record(const ConformalPoint& p) {
  ordered_json r;
  const ProjectedPoint x = project(p);
  if (const auto* e = std::get_if<EuclideanPoint>(&x)) {
    r["chart"] = finite_array({e->data(), static_cast<std::size_t>(e->size())});
  } else {
    r["infinity"] = true;
  }
  r["coeffs"] = finite_array(null_coefficients(p.vec()));
  return r;
}

ConformalPoint read_point(const Algebra& alg, const json& j, const std::string& path,
                          std::optional<double>& residual) {
  ObjectReader r(j, path);
  std::optional<Multivector> coeffs;
  if (r.has("coeffs")) {
    coeffs = from_null_coefficients(alg, r.array<double>("coeffs"), r.path("coeffs"));
  }
  std::optional<ConformalPoint> point;
  if (r.optional<bool>("infinity", false)) {
    if (r.has("chart")) throw InputError(path + ": both chart and infinity given");
    point = ConformalPoint::from_vector(alg.einf());
  } else if (r.has("chart")) {
    const std::vector<double> x = r.array<double>("chart");
    if (static_cast<int>(x.size()) != alg.n()) {
      throw InputError(r.path("chart") + ": expected " + std::to_string(alg.n()) + " coordinates");
    }
    point = lift(alg, Eigen::Map<const Eigen::VectorXd>(x.data(), alg.n()));
  } else if (coeffs) {
    try {
      point = ConformalPoint::from_vector(*coeffs);
    } catch (const DegenerateConfiguration& e) {
      throw InputError(path + ": " + e.what());
    }
    coeffs.reset();
  } else {
    throw InputError(path + ": needs chart, infinity or coeffs");
  }
  r.finish();
  if (coeffs) {
    residual = coeffs->norm() > 0 ? projective_distance(*coeffs, point->vec()) : 1.0;
  }
  return *point;
}

std::size_t read_vertex(const Lattice& lat, ObjectReader& r, const std::string& path) {
  const std::vector<int> t = r.array<int>("index");
  if (static_cast<int>(t.size()) != lat.dim() || !lat.contains(t)) {
    throw InputError(path + ".index: outside the lattice");
  }
  return lat.index(t);
}

}  // namespace

ordered_json net_to_json(const PairNet& net, const WriteOptions& opts) {
  const Lattice& lat = net.lattice;
  ordered_json doc;
  doc["schema"] = kNetSchema;
  doc["n"] = net.n;
  doc["m"] = lat.dim();
  doc["extents"] = lat.extents();
  doc["euclidean"] = net.euclidean;
  auto keep = [&](std::size_t v) {
    return opts.max_support < 0 || static_cast<int>(lat.support(v).size()) <= opts.max_support;
  };
  ordered_json vertices = ordered_json::array();
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (!keep(v)) continue;
    ordered_json rec;
    rec["index"] = lat.multi_index(v);
    rec["F"] = point_record(net.F[v]);
    if (!net.Fhat.empty()) rec["Fhat"] = point_record(net.Fhat[v]);
    vertices.push_back(std::move(rec));
  }
  doc["vertices"] = std::move(vertices);
  if (opts.edge_spheres && net.has_edge_spheres()) {
    ordered_json spheres = ordered_json::array();
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int j = 0; j < lat.dim(); ++j) {
        if (!lat.has_edge(v, j) || !keep(lat.shift(v, j))) continue;
        ordered_json rec;
        rec["index"] = lat.multi_index(v);
        rec["axis"] = j;
        rec["coeffs"] = finite_array(null_coefficients(net.edge_spheres[lat.edge_slot(v, j)]));
        spheres.push_back(std::move(rec));
      }
    }
    doc["edge_spheres"] = std::move(spheres);
  }
  if (opts.frames && net.has_frames()) {
    ordered_json frames = ordered_json::array();
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      if (!keep(v)) continue;
      ordered_json rec;
      rec["index"] = lat.multi_index(v);
      rec["blades"] = finite_array(net.frames[v].mv().coefficients());
      frames.push_back(std::move(rec));
    }
    doc["frames"] = std::move(frames);
  }
  return doc;
}

ordered_json initial_data_to_json(const InitialData& init) {
  const Lattice& lat = init.lattice;
  ordered_json doc;
  doc["schema"] = kNetSchema;
  doc["n"] = init.n;
  doc["m"] = lat.dim();
  doc["extents"] = lat.extents();
  doc["euclidean"] = false;
  ordered_json vertices = ordered_json::array();
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (!init.F[v]) continue;
    ordered_json rec;
    rec["index"] = lat.multi_index(v);
    rec["F"] = point_record(*init.F[v]);
    if (init.has_companion() && init.Fhat[v]) rec["Fhat"] = point_record(*init.Fhat[v]);
    vertices.push_back(std::move(rec));
  }
  doc["vertices"] = std::move(vertices);
  return doc;
}

NetDocument net_from_json(const json& j) {
  ObjectReader r(j, "net");
  const std::string schema = r.required<std::string>("schema");
  if (schema != kNetSchema) {
    throw InputError("net.schema: expected '" + std::string(kNetSchema) + "', got '" + schema + "'");
  }
  NetDocument doc;
  doc.n = r.required<int>("n");
  const int m = r.required<int>("m");
  const std::vector<int> extents = r.array<int>("extents");
  if (doc.n < Algebra::kMinDim || doc.n > Algebra::kMaxDim) throw InputError("net.n: unsupported dimension");
  if (m < 1 || m > doc.n || static_cast<int>(extents.size()) != m) {
    throw InputError("net.m: needs 1 <= m <= n and one extent per axis");
  }
  for (int e : extents) {
    if (e < 1) throw InputError("net.extents: entries must be positive");
  }
  doc.lattice = Lattice(extents);
  doc.euclidean = r.optional<bool>("euclidean", false);
  const Lattice& lat = doc.lattice;
  const Algebra& alg = Algebra::get(doc.n);
  doc.F.resize(lat.vertex_count());

  const json& vertices = r.child("vertices");
  if (!vertices.is_array()) throw InputError("net.vertices: expected an array");
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const std::string path = "net.vertices[" + std::to_string(k) + "]";
    ObjectReader rec(vertices[k], path);
    const std::size_t v = read_vertex(lat, rec, path);
    if (doc.F[v]) throw InputError(path + ": vertex " + where(lat, v) + " listed twice");
    std::optional<double> residual;
    doc.F[v] = read_point(alg, rec.child("F"), path + ".F", residual);
    if (residual) doc.record_residuals.push_back({v, false, *residual});
    if (rec.has("Fhat")) {
      if (doc.Fhat.empty()) doc.Fhat.resize(lat.vertex_count());
      residual.reset();
      doc.Fhat[v] = read_point(alg, rec.child("Fhat"), path + ".Fhat", residual);
      if (residual) doc.record_residuals.push_back({v, true, *residual});
    }
    rec.finish();
  }
  for (std::size_t v = 0; v < lat.vertex_count() && !doc.Fhat.empty(); ++v) {
    if (doc.F[v].has_value() != doc.Fhat[v].has_value()) {
      throw InputError("net.vertices: vertex " + where(lat, v) + " needs both F and Fhat");
    }
    if (doc.euclidean && doc.Fhat[v] && !doc.Fhat[v]->is_infinite()) {
      throw InputError("net.euclidean: Fhat at " + where(lat, v) + " is not the point at infinity");
    }
  }
  if (doc.euclidean && doc.Fhat.empty()) throw InputError("net.euclidean: needs Fhat records");

  if (r.has("edge_spheres")) {
    const json& spheres = r.child("edge_spheres");
    if (!spheres.is_array()) throw InputError("net.edge_spheres: expected an array");
    doc.edge_spheres.assign(lat.edge_slot_count(), Multivector());
    for (std::size_t k = 0; k < spheres.size(); ++k) {
      const std::string path = "net.edge_spheres[" + std::to_string(k) + "]";
      ObjectReader rec(spheres[k], path);
      const std::size_t v = read_vertex(lat, rec, path);
      const int axis = rec.required<int>("axis");
      if (axis < 0 || axis >= m || !lat.has_edge(v, axis)) throw InputError(path + ".axis: no such edge");
      Multivector& slot = doc.edge_spheres[lat.edge_slot(v, axis)];
      if (slot.valid()) throw InputError(path + ": edge listed twice");
      slot = from_null_coefficients(alg, rec.array<double>("coeffs"), path + ".coeffs");
      rec.finish();
    }
  }
  if (r.has("frames")) {
    const json& frames = r.child("frames");
    if (!frames.is_array()) throw InputError("net.frames: expected an array");
    std::vector<std::optional<Versor>> read(lat.vertex_count());
    for (std::size_t k = 0; k < frames.size(); ++k) {
      const std::string path = "net.frames[" + std::to_string(k) + "]";
      ObjectReader rec(frames[k], path);
      const std::size_t v = read_vertex(lat, rec, path);
      std::vector<double> blades = rec.array<double>("blades");
      if (blades.size() != alg.blade_count()) {
        throw InputError(path + ".blades: expected " + std::to_string(alg.blade_count()) + " coefficients");
      }
      try {
        read[v] = Versor::from_multivector(Multivector(alg, std::move(blades)));
      } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
      }
      rec.finish();
    }
    // Frames are all or nothing.
    bool all = true;
    for (const auto& f : read) all = all && f.has_value();
    if (all) {
      for (auto& f : read) doc.frames.push_back(*f);
    } else if (!frames.empty()) {
      throw InputError("net.frames: every vertex needs a frame");
    }
  }
  r.finish();
  return doc;
}

NetDocument read_net_file(const std::string& file) { return net_from_json(parse_json_file(file)); }

PairNet to_pair_net(const NetDocument& doc) {
  const Lattice& lat = doc.lattice;
  PairNet net;
  net.lattice = lat;
  net.n = doc.n;
  net.euclidean = doc.euclidean;
  for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
    if (!doc.F[v]) throw InputError("net: vertex " + where(lat, v) + " is missing");
    net.F.push_back(*doc.F[v]);
    if (!doc.Fhat.empty()) net.Fhat.push_back(*doc.Fhat[v]);
  }
  if (!doc.edge_spheres.empty()) {
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int j = 0; j < lat.dim(); ++j) {
        if (lat.has_edge(v, j) && !doc.edge_spheres[lat.edge_slot(v, j)].valid()) {
          throw InputError("net.edge_spheres: edge at " + where(lat, v) + " axis " +
                           std::to_string(j) + " is missing");
        }
      }
    }
    net.edge_spheres = doc.edge_spheres;
  }
  if (!doc.frames.empty()) {
    net.frames = doc.frames;
    net.edge_vectors.assign(lat.edge_slot_count(), Multivector());
    for (std::size_t v = 0; v < lat.vertex_count(); ++v) {
      for (int j = 0; j < lat.dim(); ++j) {
        if (!lat.has_edge(v, j)) continue;
        net.edge_vectors[lat.edge_slot(v, j)] =
            edge_vector_from_frames(net.frames[v], net.frames[lat.shift(v, j)], j);
      }
    }
  }
  return net;
}

InitialData to_initial_data(const NetDocument& doc) {
  InitialData init;
  init.n = doc.n;
  init.lattice = doc.lattice;
  init.F = doc.F;
  init.Fhat = doc.Fhat;
  if (!doc.frames.empty()) init.origin_frame = doc.frames.front();
  return init;
}

std::string dump(const ordered_json& doc) { return doc.dump(1) + "\n"; }

void write_text_file(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file);
  out << text;
  if (!out) throw InputError("failed writing " + file);
}

}  // namespace ribnet::cli
