#include "talbot/parallel.hpp"

namespace talbot {

ExecMode& execution_mode()
{
    static ExecMode mode = ExecMode::parallel;
    return mode;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace talbot
