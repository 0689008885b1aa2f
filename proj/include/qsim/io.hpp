#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "qsim/phonon_bath.hpp"
#include "qsim/sequence.hpp"

namespace qsim {

struct RunConfig {
  int id = 2, ig = 1, ie = 2, nm = 0, ic = 1, nd = 1;
  double temp = 5.0, sfgw = 1.0, top = 10.0, ttp = 10.0;
  double geme = 0.0, gabe = 0.0, tmage = 0.0;
  double gfi = 2.0, bcm = 0.0, firr = 0.0, alp = 0.0;  // alp in degrees
  int nang = 1;
  double esta = 0.0, eend = 1.0;
  int npe = 2;
  double ro11 = 0.0, ro22 = 1.0, ro12r = 0.0, ro12i = 0.0;
  int nsa = 1;

  void validate() const;
  DensityState initial_state() const { return {ro11, ro22, ro12r, ro12i}; }
  DriveConfig drive() const;
  SweepConfig sweep() const { return {esta, eend, npe}; }
};

RunConfig parse_config(std::istream& in, const std::string& name = "config");
RunConfig load_config(const std::string& path);
void write_config(std::ostream& out, const RunConfig& cfg);

struct DirectionBlock {
  FieldDirection dir;
  std::vector<double> energies;
  CVec3 N = CVec3::Zero();
  CouplingData coupling;
};

struct FieldBlock {
  double B = 0.0;  // informative only
  std::vector<DirectionBlock> dirs;
};

std::vector<FieldBlock> parse_ddata(std::istream& in, int dim, int nm, int ic, int nd, int ig, int ie,
                                    const std::string& name = "ddata");
std::vector<FieldBlock> load_ddata(const std::string& path, const RunConfig& cfg);
void write_ddata(std::ostream& out, const std::vector<FieldBlock>& blocks, int ig, int ie);

std::vector<VibrationMode> parse_mdata(std::istream& in, int nm, std::vector<std::string>* warnings = nullptr,
                                       const std::string& name = "mdata");
std::vector<VibrationMode> load_mdata(const std::string& path, int nm, std::vector<std::string>* warnings = nullptr);

std::vector<GateStep> parse_adata(std::istream& in, int nsa, const std::string& name = "adata");
std::vector<GateStep> load_adata(const std::string& path, int nsa);

// Accepts Fortran-style D exponents; locale independent.
double parse_number(const std::string& token);

void write_curve_csv(std::ostream& out, const std::vector<double>& t, const std::vector<double>& y);
void read_curve_csv(std::istream& in, std::vector<double>& t, std::vector<double>& y, const std::string& name = "curve");

DensityState parse_state(std::istream& in, const std::string& name = "state");

}  // namespace qsim
