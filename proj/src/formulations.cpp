#include "cpds/formulations.hpp"

#include <algorithm>
#include <stdexcept>

#include "cpds/fps.hpp"

namespace cpds {

using milp::Row;

namespace {

/// s variables, the objective, and the w block shared by every builder.
FormulationModel base_model(const Instance& inst, FormulationKind kind) {
  FormulationModel model;
  model.kind = kind;
  model.layout.index = build_propagation_index(inst);
  auto& spec = model.spec;
  const int n = inst.vertex_count();

  model.layout.s_offset = 0;
  for (int v = 0; v < n; ++v) {
    int id = spec.add_binary("s_" + inst.label(v));
    spec.vars[id].branch_priority = 3;
    spec.set_objective(id, 1.0);
  }
  model.layout.w_offset = n;
  for (const auto& p : model.layout.index.a_d) {
    int id = spec.add_binary("w_" + inst.label(p.from) + "_" + inst.label(p.to));
    spec.vars[id].branch_priority = 2;
  }
  return model;
}

void add_y_block(FormulationModel& model, const Instance& inst) {
  model.layout.y_offset = static_cast<int>(model.spec.vars.size());
  for (const auto& p : model.layout.index.a_p) {
    int id = model.spec.add_binary("y_" + inst.label(p.from) + "_" + inst.label(p.to));
    model.spec.vars[id].branch_priority = 1;
  }
}

/// Coverage terms of row (s_v + sum s_u [deg<=k] + sum w_uv [deg>k] + sum y_uv).
std::vector<std::pair<int, double>> coverage_terms(const FormulationModel& model,
                                                   const Instance& inst, int v) {
  const int k = inst.capacity();
  std::vector<std::pair<int, double>> terms;
  terms.push_back({model.layout.s_offset + v, 1.0});
  for (int u : inst.neighbors(v)) {
    if (inst.degree(u) <= k) {
      terms.push_back({model.layout.s_offset + u, 1.0});
    } else {
      terms.push_back({model.layout.w_offset + model.layout.index.ad_position(u, v), 1.0});
    }
    if (model.layout.y_offset >= 0 && inst.is_zero_injection(u))
      terms.push_back({model.layout.y_offset + model.layout.index.ap_position(u, v), 1.0});
  }
  return terms;
}

void add_coverage_rows(FormulationModel& model, const Instance& inst) {
  for (int v = 0; v < inst.vertex_count(); ++v) {
    Row row;
    row.terms = coverage_terms(model, inst, v);
    row.sense = Row::Sense::ge;
    row.rhs = 1.0;
    row.name = "cov_" + inst.label(v);
    model.spec.add_row(std::move(row));
  }
}

void add_capacity_rows(FormulationModel& model, const Instance& inst) {
  const int k = inst.capacity();
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (inst.degree(v) <= k) continue;
    Row row;
    for (int u : inst.neighbors(v))
      row.terms.push_back({model.layout.w_offset + model.layout.index.ad_position(v, u), 1.0});
    row.terms.push_back({model.layout.s_offset + v, -static_cast<double>(k)});
    row.sense = Row::Sense::le;
    row.rhs = 0.0;
    row.name = "cap_" + inst.label(v);
    model.spec.add_row(std::move(row));
  }
}

void add_init2_rows(FormulationModel& model, const Instance& inst) {
  if (model.kind == FormulationKind::fps_ip) {
    for (const auto& fps : enumerate_f2(inst)) {
      Row row;
      for (const auto& p : fps.props)
        row.terms.push_back({model.layout.y_offset + model.layout.index.ap_position(p.from, p.to), 1.0});
      row.sense = Row::Sense::le;
      row.rhs = static_cast<double>(fps.props.size()) - 1.0;
      row.name = "f2";
      model.spec.add_row(std::move(row));
    }
  } else {
    for (const auto& efps : enumerate_c2(inst)) {
      Row row;
      for (const auto& p : efps.props)
        row.terms.push_back({model.layout.y_offset + model.layout.index.ap_position(p.from, p.to), 1.0});
      row.sense = Row::Sense::le;
      row.rhs = static_cast<double>(efps.bound);
      row.name = "c2";
      model.spec.add_row(std::move(row));
    }
  }
}

FormulationModel build_fps_like(const Instance& inst, FormulationKind kind,
                                FormulationOptions options) {
  FormulationModel model = base_model(inst, kind);
  model.options = options;
  add_y_block(model, inst);
  add_coverage_rows(model, inst);
  add_capacity_rows(model, inst);
  if (options.inp) add_inp_rows(model, inst);
  if (options.outp) add_outp_rows(model, inst);
  if (options.init2) add_init2_rows(model, inst);
  model.spec.name = formulation_name(kind, options) + " " + inst.name();
  return model;
}

}  // namespace

FormulationModel build_fps_ip(const Instance& inst, FormulationOptions options) {
  return build_fps_like(inst, FormulationKind::fps_ip, options);
}

FormulationModel build_efps_ip(const Instance& inst, FormulationOptions options) {
  return build_fps_like(inst, FormulationKind::efps_ip, options);
}

void add_inp_rows(FormulationModel& model, const Instance& inst) {
  for (int v = 0; v < inst.vertex_count(); ++v) {
    Row row;
    for (int u : inst.neighbors(v))
      if (inst.is_zero_injection(u))
        row.terms.push_back({model.layout.y_offset + model.layout.index.ap_position(u, v), 1.0});
    if (row.terms.empty()) continue;
    row.sense = Row::Sense::le;
    row.rhs = 1.0;
    row.name = "inp_" + inst.label(v);
    model.spec.add_row(std::move(row));
  }
}

void add_outp_rows(FormulationModel& model, const Instance& inst) {
  const int k = inst.capacity();
  for (int v = 0; v < inst.vertex_count(); ++v) {
    if (!inst.is_zero_injection(v) || inst.degree(v) == 0) continue;
    Row row;
    for (int u : inst.neighbors(v))
      row.terms.push_back({model.layout.y_offset + model.layout.index.ap_position(v, u), 1.0});
    if (inst.degree(v) <= k) {
      // a placed low-degree vertex monitors all neighbors by (DR) instead
      row.terms.push_back({model.layout.s_offset + v, 1.0});
    }
    row.sense = Row::Sense::le;
    row.rhs = 1.0;
    row.name = "outp_" + inst.label(v);
    model.spec.add_row(std::move(row));
  }
}

FormulationModel build_bri_ip(const Instance& inst) {
  FormulationModel model = base_model(inst, FormulationKind::bri_ip);
  add_y_block(model, inst);
  add_coverage_rows(model, inst);
  add_capacity_rows(model, inst);
  const int n = inst.vertex_count();
  const double T = n;
  model.layout.x_offset = static_cast<int>(model.spec.vars.size());
  for (int v = 0; v < n; ++v) model.spec.add_integer("x_" + inst.label(v), 0.0, T);
  for (std::size_t i = 0; i < model.layout.index.a_p.size(); ++i) {
    const auto& p = model.layout.index.a_p[i];
    const int yvar = model.layout.y_offset + static_cast<int>(i);
    for (int w : inst.neighbors(p.from)) {
      if (w == p.to) continue;
      Row row;
      row.terms = {{model.layout.x_offset + w, 1.0},
                   {model.layout.x_offset + p.to, -1.0},
                   {yvar, T + 1.0}};
      row.sense = Row::Sense::le;
      row.rhs = T;
      model.spec.add_row(std::move(row));
    }
    // w == p.from (the closed-neighborhood member)
    Row row;
    row.terms = {{model.layout.x_offset + p.from, 1.0},
                 {model.layout.x_offset + p.to, -1.0},
                 {yvar, T + 1.0}};
    row.sense = Row::Sense::le;
    row.rhs = T;
    model.spec.add_row(std::move(row));
  }
  model.spec.name = "BRI-IP " + inst.name();
  return model;
}

FormulationModel build_jov_ip(const Instance& inst) {
  FormulationModel model = base_model(inst, FormulationKind::jov_ip);
  add_y_block(model, inst);
  add_capacity_rows(model, inst);
  const int n = inst.vertex_count();
  const double M = n;  // big-M, matching the BRI horizon
  const int k = inst.capacity();
  model.layout.x_offset = static_cast<int>(model.spec.vars.size());
  for (int v = 0; v < n; ++v) model.spec.add_integer("x_" + inst.label(v), 1.0, M);
  auto x = [&](int v) { return model.layout.x_offset + v; };
  auto s = [&](int v) { return model.layout.s_offset + v; };
  auto y = [&](int u, int v) { return model.layout.y_offset + model.layout.index.ap_position(u, v); };

  for (int v = 0; v < n; ++v) {
    // x_v <= s_v + M(1 - s_v)
    Row row;
    row.terms = {{x(v), 1.0}, {s(v), M - 1.0}};
    row.sense = Row::Sense::le;
    row.rhs = M;
    model.spec.add_row(std::move(row));
  }
  for (int v = 0; v < n; ++v) {
    for (int u : inst.neighbors(v)) {
      if (inst.degree(u) > k) continue;
      Row row;
      row.terms = {{x(v), 1.0}, {s(u), M - 1.0}};
      row.sense = Row::Sense::le;
      row.rhs = M;
      model.spec.add_row(std::move(row));
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!inst.is_zero_injection(v) || inst.degree(v) == 0) continue;
    Row row;
    for (int u : inst.neighbors(v)) row.terms.push_back({y(v, u), 1.0});
    row.sense = Row::Sense::le;
    row.rhs = 1.0;
    model.spec.add_row(std::move(row));
  }
  for (int v = 0; v < n; ++v) {
    Row row;
    for (int u : inst.neighbors(v))
      if (inst.is_zero_injection(u)) row.terms.push_back({y(u, v), 1.0});
    if (row.terms.empty()) continue;
    row.sense = Row::Sense::le;
    row.rhs = 1.0;
    model.spec.add_row(std::move(row));
  }
  for (int v = 0; v < n; ++v) {
    if (!inst.is_zero_injection(v)) continue;
    for (int u : inst.neighbors(v)) {
      if (u < v || !inst.is_zero_injection(u)) continue;
      Row row;
      row.terms = {{y(v, u), 1.0}, {y(u, v), 1.0}};
      row.sense = Row::Sense::le;
      row.rhs = 1.0;
      model.spec.add_row(std::move(row));
    }
  }
  for (std::size_t i = 0; i < model.layout.index.a_p.size(); ++i) {
    const auto& p = model.layout.index.a_p[i];
    const int yvar = model.layout.y_offset + static_cast<int>(i);
    auto precedence = [&](int w) {
      // x_v >= x_w + 1 - M(1 - y_uv)
      Row row;
      row.terms = {{x(w), 1.0}, {x(p.to), -1.0}, {yvar, M}};
      row.sense = Row::Sense::le;
      row.rhs = M - 1.0;
      model.spec.add_row(std::move(row));
    };
    precedence(p.from);
    for (int w : inst.neighbors(p.from))
      if (w != p.to) precedence(w);
  }
  for (std::size_t i = 0; i < model.layout.index.a_d.size(); ++i) {
    const auto& p = model.layout.index.a_d[i];
    Row row;
    row.terms = {{x(p.to), 1.0}, {model.layout.w_offset + static_cast<int>(i), M - 1.0}};
    row.sense = Row::Sense::le;
    row.rhs = M;
    model.spec.add_row(std::move(row));
  }
  for (int v = 0; v < n; ++v) {
    Row row;
    row.terms.push_back({x(v), 1.0});
    for (auto [var, coeff] : coverage_terms(model, inst, v)) row.terms.push_back({var, -M * coeff});
    row.sense = Row::Sense::le;
    row.rhs = 0.0;
    model.spec.add_row(std::move(row));
  }
  model.spec.name = "JOV-IP " + inst.name();
  return model;
}

FormulationModel build_fort_ip(const Instance& inst) {
  FormulationModel model = base_model(inst, FormulationKind::fort_ip);
  add_capacity_rows(model, inst);
  model.spec.name = "FORT-IP " + inst.name();
  return model;
}

FormulationModel build_model(const Instance& inst, FormulationKind kind,
                             FormulationOptions options) {
  switch (kind) {
    case FormulationKind::fps_ip: return build_fps_ip(inst, options);
    case FormulationKind::efps_ip: return build_efps_ip(inst, options);
    case FormulationKind::bri_ip: return build_bri_ip(inst);
    case FormulationKind::jov_ip: return build_jov_ip(inst);
    case FormulationKind::fort_ip: return build_fort_ip(inst);
  }
  throw std::logic_error("unknown formulation kind");
}

std::string formulation_name(FormulationKind kind, FormulationOptions options) {
  std::string base;
  switch (kind) {
    case FormulationKind::fps_ip: base = "FPS-IP"; break;
    case FormulationKind::efps_ip: base = "EFPS-IP"; break;
    case FormulationKind::bri_ip: return "BRI-IP";
    case FormulationKind::jov_ip: return "JOV-IP";
    case FormulationKind::fort_ip: return "FORT-IP";
  }
  if (options.inp) base += "-InP";
  if (options.outp) base += "-OutP";
  if (options.init2) base += "-Init";
  return base;
}

std::pair<FormulationKind, FormulationOptions> parse_formulation(const std::string& name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  FormulationOptions options;
  FormulationKind kind;
  auto starts = [&](const char* prefix) { return lower.rfind(prefix, 0) == 0; };
  std::size_t consumed;
  if (starts("efps-ip")) {
    kind = FormulationKind::efps_ip;
    consumed = 7;
  } else if (starts("fps-ip")) {
    kind = FormulationKind::fps_ip;
    consumed = 6;
  } else if (starts("bri-ip")) {
    kind = FormulationKind::bri_ip;
    consumed = 6;
  } else if (starts("jov-ip")) {
    kind = FormulationKind::jov_ip;
    consumed = 6;
  } else if (starts("fort-ip")) {
    kind = FormulationKind::fort_ip;
    consumed = 7;
  } else {
    throw std::invalid_argument("unknown formulation: " + name);
  }
  std::string rest = lower.substr(consumed);
  while (!rest.empty()) {
    if (rest.rfind("-inp", 0) == 0) {
      options.inp = true;
      rest = rest.substr(4);
    } else if (rest.rfind("-outp", 0) == 0) {
      options.outp = true;
      rest = rest.substr(5);
    } else if (rest.rfind("-init2", 0) == 0) {
      options.init2 = true;
      rest = rest.substr(6);
    } else if (rest.rfind("-init", 0) == 0) {
      options.init2 = true;
      rest = rest.substr(5);
    } else {
      throw std::invalid_argument("unknown formulation option in: " + name);
    }
  }
  return {kind, options};
}

}  // namespace cpds
