#include "mcoords/errors.hpp"
#include "mcoords/homotopy.hpp"
#include "mcoords/oracle.hpp"

namespace mc {

std::unique_ptr<Oracle> oracle_from_descriptor(const OracleDescriptor& desc) {
  std::unique_ptr<Oracle> oracle;
  switch (desc.kind) {
    case BackendKind::Synthetic:
      if (desc.rng_id != Rng::kAlgorithmId)
        throw DescriptorMismatch("descriptor pins RNG '" + desc.rng_id +
                                 "', this build provides '" + Rng::kAlgorithmId +
                                 "'");
      oracle = std::make_unique<SyntheticOracle>(desc.d, desc.n, desc.seed,
                                                 desc.require_transitive);
      break;
    case BackendKind::Example2:
      oracle = make_example2();
      break;
    case BackendKind::Parametric: {
      UnivariateFamily fam;
      fam.d = desc.d;
      fam.base_params = desc.base_coeffs;
      fam.q1 = desc.q1;
      fam.q2 = desc.q2;
      fam.q3 = desc.q3;
      fam.q4 = desc.q4;
      oracle = make_numeric_oracle(std::move(fam), desc.tracker);
      break;
    }
    default:
      throw FormatError("unknown oracle backend kind");
  }
  if (!(oracle->descriptor() == desc))
    throw DescriptorMismatch("reconstructed oracle does not match its descriptor");
  return oracle;
}

}  // namespace mc
