#ifndef RCBOUND_ERRORS_HPP
#define RCBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcbound {

// Base class for all library errors. Validation failures, budget refusals
// and numerical inconsistencies all derive from this so callers can map
// them to exit codes in one place.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define RCBOUND_DEFINE_ERROR(NAME)                  \
    struct NAME : Error {                           \
        using Error::Error;                         \
    }

// Scenario / file validation
RCBOUND_DEFINE_ERROR(ParseError);
RCBOUND_DEFINE_ERROR(InvalidScenario);
RCBOUND_DEFINE_ERROR(ZeroPatternMismatch);
RCBOUND_DEFINE_ERROR(NotStochastic);
RCBOUND_DEFINE_ERROR(NegativeEntry);
RCBOUND_DEFINE_ERROR(SymbolOutOfRange);

// Density tables and discrete laws
RCBOUND_DEFINE_ERROR(DegenerateColumn);
RCBOUND_DEFINE_ERROR(LengthMismatch);
RCBOUND_DEFINE_ERROR(NormalizationFailure);
RCBOUND_DEFINE_ERROR(InfiniteAtom);
RCBOUND_DEFINE_ERROR(AtomExplosion);
RCBOUND_DEFINE_ERROR(ZeroVariance);

// Regularity machinery
RCBOUND_DEFINE_ERROR(IrregularScenario);
RCBOUND_DEFINE_ERROR(NotInF);
RCBOUND_DEFINE_ERROR(InfeasibleDelta);

// Resource guards
RCBOUND_DEFINE_ERROR(BudgetExceeded);
RCBOUND_DEFINE_ERROR(MemoryBudget);

// Estimation
RCBOUND_DEFINE_ERROR(DegenerateFit);

#undef RCBOUND_DEFINE_ERROR

}  // namespace rcbound

#endif
