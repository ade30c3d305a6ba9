#pragma once

#include <string>

#include "mtphi/archimedean.hpp"
#include "mtphi/filmod.hpp"
#include "mtphi/grading.hpp"
#include "mtphi/logpoint.hpp"

namespace mtphi {

/// JSON serialization with a deterministic byte layout: two-space indent,
/// object keys in a fixed order, scalars in digit form.  Conventions:
/// matrices are row major nested lists, "basis" arrays list basis vectors
/// (columns), a scalar is {"pi_coeffs":[{"val":v,"digits":[...]}]} with
/// little-endian base-p digits per pi-power coordinate, and parsers also
/// accept the shorthand {"rational":"a/b"}.  Parse failures throw
/// ParseError whose path member points at the offending node, like
/// $.filtration[1].basis[0][2].

std::string dump_field(const LocalField& k);
LocalField parse_field(const std::string& text);

std::string dump_scalar(const Scalar& s);
Scalar parse_scalar(const std::string& text, const LocalField& k);

std::string dump_module(const FilPhiNModule& m);
FilPhiNModule parse_module(const std::string& text);

/// Both eta flavors share one schema: entries are coefficient lists by
/// X-power, a plain eta entry being the constant list of length one.
std::string dump_eta(const EtaMatrix& e);
std::string dump_eta_st(const EtaStMatrix& e);
EtaStMatrix parse_eta_st(const std::string& text, const LocalField& k);

/// The field is contextual, not embedded; parse_ceta attaches the one
/// passed in.
std::string dump_ceta(const CEtaObject& v);
CEtaObject parse_ceta(const std::string& text, const LocalField& k);

/// Plain integer list, compact.
std::string dump_lie(const LieProfile& p);

std::string dump_mths(const RealMTHS& h);
RealMTHS parse_mths(const std::string& text);
std::string dump_arch(const ArchComparison& a);

std::string dump_validation(const ValidationReport& r);

}  // namespace mtphi
