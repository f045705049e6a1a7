#ifndef CPDS_FORMULATIONS_HPP
#define CPDS_FORMULATIONS_HPP

#include <string>

#include "cpds/instance.hpp"
#include "cpds/milp.hpp"

namespace cpds {

enum class FormulationKind { fps_ip, efps_ip, bri_ip, jov_ip, fort_ip };

/// InP / OutP / 2-cycle initialization toggles; meaningful for the FPS and
/// EFPS builders only and ignored by the rest.
struct FormulationOptions {
  bool inp = false;
  bool outp = false;
  bool init2 = false;
};

/// Where each variable block starts inside the ModelSpec.
struct VarLayout {
  int s_offset = 0;
  int w_offset = -1;
  int y_offset = -1;
  int x_offset = -1;
  PropagationIndex index;
};

struct FormulationModel {
  milp::ModelSpec spec;
  VarLayout layout;
  FormulationKind kind = FormulationKind::fps_ip;
  FormulationOptions options;
};

FormulationModel build_fps_ip(const Instance& inst, FormulationOptions options = {});
FormulationModel build_efps_ip(const Instance& inst, FormulationOptions options = {});
FormulationModel build_bri_ip(const Instance& inst);
FormulationModel build_jov_ip(const Instance& inst);
FormulationModel build_fort_ip(const Instance& inst);

void add_inp_rows(FormulationModel& model, const Instance& inst);
void add_outp_rows(FormulationModel& model, const Instance& inst);

FormulationModel build_model(const Instance& inst, FormulationKind kind,
                             FormulationOptions options);

std::string formulation_name(FormulationKind kind, FormulationOptions options);
/// Parses names like "EFPS-IP-OutP-Init" or "fort-ip"; throws on junk.
std::pair<FormulationKind, FormulationOptions> parse_formulation(const std::string& name);

}  // namespace cpds

#endif
