#include "divrank/text.hpp"

#include <sstream>

namespace divrank {

namespace {

// Frozen English stop-word list, post-tokenization form (lowercase, length
// >= 2, contraction fragments like "aren"/"ll" listed separately). Must stay
// byte-identical to data/stopwords.txt; the corpus tests enforce that.
const char* const kStopwordText = R"(about
above
after
again
against
ain
all
am
an
and
any
are
aren
as
at
be
because
been
before
being
below
between
both
but
by
can
could
couldn
did
didn
do
does
doesn
doing
don
down
during
each
few
for
from
further
had
hadn
has
hasn
have
haven
having
he
her
here
hers
herself
him
himself
his
how
if
in
into
is
isn
it
its
itself
just
ll
ma
me
mightn
more
most
mustn
my
myself
needn
no
nor
not
now
of
off
on
once
only
or
other
our
ours
ourselves
out
over
own
re
same
shan
she
should
shouldn
so
some
such
than
that
the
their
theirs
them
themselves
then
there
these
they
this
those
through
to
too
under
until
up
ve
very
was
wasn
we
were
weren
what
when
where
which
while
who
whom
why
will
with
won
wouldn
you
your
yours
yourself
yourselves
)";

} // namespace

const std::unordered_set<std::string>& defaultStopwords() {
    static const std::unordered_set<std::string> words = [] {
        std::unordered_set<std::string> set;
        std::istringstream in(kStopwordText);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) set.insert(line);
        return set;
    }();
    return words;
}

} // namespace divrank
